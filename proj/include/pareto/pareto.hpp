#pragma once

#include "pareto/copositivity.hpp"
#include "pareto/document.hpp"
#include "pareto/eigensolvers.hpp"
#include "pareto/fixtures.hpp"
#include "pareto/minimize.hpp"
#include "pareto/report.hpp"
#include "pareto/spectrum.hpp"
#include "pareto/tensor.hpp"
