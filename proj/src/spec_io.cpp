#include "bpslab/spec_io.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "bpslab/errors.hpp"

namespace bpslab {
namespace {

using nlohmann::json;

LocalPrimeData single_value(std::uint64_t p, std::vector<Complex> values) {
  return LocalPrimeData{p, std::move(values)};
}

std::string line_col(std::string_view text, std::size_t byte) {
  std::size_t line = 1, col = 1;
  for (std::size_t i = 0; i < byte && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  return "line " + std::to_string(line) + ", column " + std::to_string(col);
}

double as_number(const json& j, const std::string& where) {
  if (!j.is_number()) throw InputError(where + ": expected a number");
  return j.get<double>();
}

}  // namespace

MultiplicativeSpec preset(std::string_view name) {
  if (name == "one") return MultiplicativeSpec{};
  if (name == "parity") return MultiplicativeSpec({single_value(2, {-1.0})});
  if (name == "example1")
    return MultiplicativeSpec({single_value(3, {2.0, -15.0, 0.0})});
  if (name == "example2")
    return MultiplicativeSpec({single_value(5, {kPi, -20.0 - 4.0 * kPi})});
  constexpr std::string_view qprefix = "qperiodic:";
  if (name.substr(0, qprefix.size()) == qprefix) {
    const auto digits = name.substr(qprefix.size());
    std::uint64_t q = 0;
    const auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), q);
    if (ec != std::errc{} || ptr != digits.data() + digits.size() || !is_prime(q))
      throw InputError("preset '" + std::string(name) + "': expected qperiodic:<prime>");
    // Unique q-periodic choice with a vanishing Euler factor: f(q) = -(q-1).
    return MultiplicativeSpec({single_value(q, {-(static_cast<double>(q) - 1.0)})});
  }
  throw InputError("unknown preset '" + std::string(name) + "'");
}

std::vector<std::string> preset_names() {
  return {"one", "parity", "example1", "example2", "qperiodic:<q>"};
}

MultiplicativeSpec parse_spec(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    throw InputError("spec parse error at " + line_col(text, e.byte == 0 ? 0 : e.byte - 1) +
                     ": " + e.what());
  }
  if (!doc.is_object() || !doc.contains("exceptional") || !doc["exceptional"].is_array())
    throw InputError("spec: expected an object with an \"exceptional\" array");

  std::vector<LocalPrimeData> locals;
  std::size_t idx = 0;
  for (const auto& entry : doc["exceptional"]) {
    const std::string where = "exceptional[" + std::to_string(idx++) + "]";
    if (!entry.is_object() || !entry.contains("p") || !entry.contains("values"))
      throw InputError(where + ": expected {\"p\": ..., \"values\": [...]}");
    const auto& pj = entry["p"];
    if (!pj.is_number_unsigned())
      throw InputError(where + ".p: expected a positive integer");
    LocalPrimeData local;
    local.p = pj.get<std::uint64_t>();
    if (!entry["values"].is_array()) throw InputError(where + ".values: expected an array");
    std::size_t k = 0;
    for (const auto& v : entry["values"]) {
      const std::string vwhere = where + ".values[" + std::to_string(k++) + "]";
      if (!v.is_array() || v.size() != 2)
        throw InputError(vwhere + ": expected [re, im]");
      local.values.emplace_back(as_number(v[0], vwhere), as_number(v[1], vwhere));
    }
    locals.push_back(std::move(local));
  }
  try {
    return MultiplicativeSpec(std::move(locals));
  } catch (const Error& e) {
    throw InputError(std::string("spec validation: ") + e.what());
  }
}

MultiplicativeSpec load_spec_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open spec file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_spec(buf.str());
}

std::string to_json(const MultiplicativeSpec& spec) {
  json doc;
  doc["exceptional"] = json::array();
  for (const auto& local : spec.exceptional()) {
    json values = json::array();
    for (const auto& v : local.values) values.push_back({v.real(), v.imag()});
    doc["exceptional"].push_back({{"p", local.p}, {"values", values}});
  }
  return doc.dump();
}

}  // namespace bpslab
