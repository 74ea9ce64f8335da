// pareto: Pareto H-/Z-spectra, constrained minimization and copositivity of
// tensors given as JSON documents.
//
//   pareto spectrum   FILE [--kind h|z|both]
//   pareto minimize   FILE [--kind h|z|both] [--resolution R]
//   pareto copositive FILE [--kind h|z|both] [--zero-band B]
//   pareto verify     FILE --value V --vector x1,x2,... [--kind h|z]
//   pareto example    ex3.1|ex3.2|ex4.1 [--t T]
//
// FILE may be "-" for standard input.

#include <CLI11.hpp>

#include "pareto/pareto.hpp"

#include <fstream>
#include <iostream>
#include <iterator>
#include <sstream>

namespace {

std::string read_input(const std::string& path) {
  if (path == "-") return {std::istreambuf_iterator<char>(std::cin), {}};
  std::ifstream in(path);
  if (!in) throw pareto::DocumentError("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::vector<pareto::Kind> kinds_of(const std::string& k) {
  if (k == "h") return {pareto::Kind::H};
  if (k == "z") return {pareto::Kind::Z};
  return {pareto::Kind::H, pareto::Kind::Z};
}

pareto::Route route_of(const std::string& k) {
  if (k == "h") return pareto::Route::H;
  if (k == "z") return pareto::Route::Z;
  return pareto::Route::Both;
}

pareto::Vector parse_vector(const std::string& text) {
  std::vector<double> values;
  std::stringstream ss(text);
  for (std::string item; std::getline(ss, item, ',');) {
    std::size_t used = 0;
    const double v = std::stod(item, &used);
    if (used != item.size()) throw std::invalid_argument("bad vector component '" + item + "'");
    values.push_back(v);
  }
  return Eigen::Map<pareto::Vector>(values.data(), static_cast<Eigen::Index>(values.size()));
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Pareto eigenvalues, constrained minimization and copositivity of tensors"};
  app.require_subcommand(1);

  pareto::RunOptions opts;
  std::string format = "json";
  std::string kind = "both";
  bool no_timing = false;
  std::string file;
  double value = 0.0;
  std::string vector_text;
  double verify_tol = 1e-8;
  std::string example;
  double t = 0.0;

  auto add_common = [&](CLI::App* sub, bool with_kind) {
    if (with_kind) sub->add_option("--kind", kind, "h, z or both")->check(CLI::IsMember({"h", "z", "both"}));
    sub->add_option("--seed", opts.solver.seed, "random seed");
    sub->add_option("--starts", opts.solver.starts, "starts per solve (0: 200 * dim)")->check(CLI::NonNegativeNumber);
    sub->add_option("--max-iters", opts.solver.max_iters, "iterations per start")->check(CLI::PositiveNumber);
    sub->add_option("--tol", opts.solver.tol, "eigen-equation residual tolerance")->check(CLI::PositiveNumber);
    sub->add_option("--slack-tol", opts.spectrum.slack_tol, "complement slack tolerance")->check(CLI::NonNegativeNumber);
    sub->add_option("--zero-band", opts.zero_band, "band around 0 classified as boundary")->check(CLI::NonNegativeNumber);
    sub->add_option("--resolution", opts.resolution, "grid oracle resolution (minimize, dim <= 4)");
    sub->add_option("--format", format, "json or text")->check(CLI::IsMember({"json", "text"}));
    sub->add_flag("--no-timing", no_timing, "omit timing fields (byte-stable output)");
  };

  auto* spectrum = app.add_subcommand("spectrum", "Pareto spectrum by principal sub-tensor enumeration");
  spectrum->add_option("file", file, "tensor document")->required();
  add_common(spectrum, true);

  auto* minimize = app.add_subcommand("minimize", "minimize A x^m over the nonnegative unit sphere");
  minimize->add_option("file", file, "tensor document")->required();
  add_common(minimize, true);

  auto* copositive = app.add_subcommand("copositive", "classify copositivity of a symmetric tensor");
  copositive->add_option("file", file, "tensor document")->required();
  add_common(copositive, true);

  auto* verify = app.add_subcommand("verify", "check a candidate Pareto eigenpair");
  verify->add_option("file", file, "tensor document")->required();
  verify->add_option("--value", value, "candidate eigenvalue")->required();
  verify->add_option("--vector", vector_text, "candidate eigenvector, comma separated")->required();
  verify->add_option("--verify-tol", verify_tol, "verification tolerance")->check(CLI::PositiveNumber);
  add_common(verify, true);

  auto* run_example = app.add_subcommand("example", "run a built-in example against its known answers");
  run_example->add_option("name", example, "example name")->required()->check(CLI::IsMember(pareto::example_names()));
  run_example->add_option("--t", t, "parameter of ex4.1");
  add_common(run_example, false);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? pareto::kExitOk : pareto::kExitUsage;
  }
  opts.timing = !no_timing;

  pareto::RunReport report;
  try {
    if (*run_example) {
      report = pareto::run_example(example, t, opts);
    } else {
      const pareto::ParsedTensor input = pareto::parse(read_input(file));
      if (*spectrum) {
        report = pareto::run_spectrum(input, file, kinds_of(kind), opts);
      } else if (*minimize) {
        report = pareto::run_minimize(input, file, kinds_of(kind), opts);
      } else if (*copositive) {
        report = pareto::run_copositive(input, file, route_of(kind), opts);
      } else {
        if (kind == "both") kind = "h";
        report = pareto::run_verify(input, file, value, parse_vector(vector_text), kinds_of(kind).front(), verify_tol,
                                    opts);
      }
    }
  } catch (const pareto::DocumentError& e) {
    std::cerr << "error: " << file << ": " << e.what() << "\n";
    return pareto::kExitUsage;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return pareto::kExitUsage;
  } catch (const std::length_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return pareto::kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return pareto::kExitInternal;
  }

  if (format == "json")
    std::cout << report.body.dump(2) << "\n";
  else
    std::cout << pareto::render_text(report.body);
  return report.exit_code;
}
