#pragma once

// Tensor document format (JSON, indices 1-based):
//
//   {
//     "name": "example",            optional
//     "order": 3,
//     "dim": 2,
//     "symmetric": false,           optional, default false; true symmetrizes
//     "entries": [ {"index": [1, 1, 2], "value": -0.5}, ... ]
//   }
//
// Entries with the same leading index and the same trailing multiset add
// up, so a grouped coefficient can be given through one representative.

#include "pareto/tensor.hpp"

#include <nlohmann/json.hpp>

#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace pareto {

class DocumentError : public std::runtime_error {
 public:
  DocumentError(const std::string& what, int line = 0, int column = 0)
      : std::runtime_error(line > 0 ? "line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + what
                                    : what),
        line_(line),
        column_(column) {}

  int line() const { return line_; }
  int column() const { return column_; }

 private:
  int line_;
  int column_;
};

struct DocumentEntry {
  std::vector<int> index;  // 1-based
  double value = 0.0;

  friend bool operator==(const DocumentEntry&, const DocumentEntry&) = default;
};

struct TensorDocument {
  int order = 2;
  int dim = 1;
  std::vector<DocumentEntry> entries;
  bool symmetric = false;
  std::optional<std::string> name;

  friend bool operator==(const TensorDocument&, const TensorDocument&) = default;
};

struct ParsedTensor {
  Tensor tensor;
  std::optional<std::string> name;
  std::vector<std::string> warnings;
};

namespace detail {

inline std::pair<int, int> line_column(std::string_view text, std::size_t byte) {
  int line = 1;
  int column = 1;
  for (std::size_t i = 0; i + 1 < byte && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      column = 1;
    } else {
      ++column;
    }
  }
  return {line, column};
}

template <typename T>
T field(const nlohmann::json& obj, const char* key, const std::string& path) {
  const auto it = obj.find(key);
  if (it == obj.end()) throw DocumentError(path + ": missing \"" + key + "\"");
  try {
    return it->get<T>();
  } catch (const nlohmann::json::exception&) {
    throw DocumentError(path + "." + key + ": wrong type");
  }
}

}  // namespace detail

inline TensorDocument parse_document(std::string_view text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    const auto [line, column] = detail::line_column(text, e.byte);
    std::string msg = e.what();
    if (const auto p = msg.find("syntax error"); p != std::string::npos) msg = msg.substr(p);
    throw DocumentError(msg, line, column);
  }
  if (!j.is_object()) throw DocumentError("document root must be an object");

  static const std::set<std::string> known{"name", "order", "dim", "symmetric", "entries"};
  for (const auto& [key, unused] : j.items())
    if (!known.contains(key)) throw DocumentError("unknown field \"" + key + "\"");

  TensorDocument doc;
  doc.order = detail::field<int>(j, "order", "$");
  doc.dim = detail::field<int>(j, "dim", "$");
  if (j.contains("symmetric")) doc.symmetric = detail::field<bool>(j, "symmetric", "$");
  if (j.contains("name")) doc.name = detail::field<std::string>(j, "name", "$");

  const auto entries = j.find("entries");
  if (entries == j.end()) throw DocumentError("$: missing \"entries\"");
  if (!entries->is_array()) throw DocumentError("$.entries: must be an array");
  for (std::size_t k = 0; k < entries->size(); ++k) {
    const std::string path = "$.entries[" + std::to_string(k) + "]";
    const auto& e = (*entries)[k];
    if (!e.is_object()) throw DocumentError(path + ": must be an object");
    DocumentEntry de;
    de.index = detail::field<std::vector<int>>(e, "index", path);
    de.value = detail::field<double>(e, "value", path);
    doc.entries.push_back(std::move(de));
  }
  return doc;
}

inline std::string serialize(const TensorDocument& doc) {
  nlohmann::ordered_json j;
  if (doc.name) j["name"] = *doc.name;
  j["order"] = doc.order;
  j["dim"] = doc.dim;
  j["symmetric"] = doc.symmetric;
  j["entries"] = nlohmann::ordered_json::array();
  for (const auto& e : doc.entries) j["entries"].push_back({{"index", e.index}, {"value", e.value}});
  return j.dump(2) + "\n";
}

/// Builds the tensor (0-based internally). Duplicate multi-indices are
/// summed and reported as warnings.
inline ParsedTensor to_tensor(const TensorDocument& doc) {
  ParsedTensor out;
  out.name = doc.name;
  std::vector<RawEntry> raw;
  std::map<std::vector<int>, int> seen;
  for (std::size_t k = 0; k < doc.entries.size(); ++k) {
    const auto& e = doc.entries[k];
    if (static_cast<int>(e.index.size()) != doc.order)
      throw DocumentError("entries[" + std::to_string(k) + "]: index has length " + std::to_string(e.index.size()) +
                          ", expected order " + std::to_string(doc.order));
    RawEntry r;
    for (int i : e.index) {
      if (i < 1 || i > doc.dim)
        throw DocumentError("entries[" + std::to_string(k) + "]: index " + std::to_string(i) + " outside 1.." +
                            std::to_string(doc.dim));
      r.index.push_back(i - 1);
    }
    r.value = e.value;
    if (seen[e.index]++ == 1) {
      std::string idx;
      for (int i : e.index) idx += (idx.empty() ? "" : ",") + std::to_string(i);
      out.warnings.push_back("duplicate index (" + idx + ") summed");
    }
    raw.push_back(std::move(r));
  }
  try {
    out.tensor = Tensor::build(doc.order, doc.dim, raw, doc.symmetric);
  } catch (const std::logic_error& e) {
    throw DocumentError(e.what());
  }
  return out;
}

inline ParsedTensor parse(std::string_view text) { return to_tensor(parse_document(text)); }

/// Canonical document: one entry per slice, index = lead followed by the
/// sorted trailing multiset, symmetric = false (the slices already carry
/// any symmetry).
inline TensorDocument to_document(const Tensor& t, std::optional<std::string> name = std::nullopt) {
  TensorDocument doc;
  doc.order = t.order();
  doc.dim = t.dim();
  doc.name = std::move(name);
  for (const auto& term : t.terms()) {
    DocumentEntry e;
    e.index.push_back(term.lead + 1);
    for (int i : term.trailing) e.index.push_back(i + 1);
    e.value = term.coeff;
    doc.entries.push_back(std::move(e));
  }
  return doc;
}

}  // namespace pareto
