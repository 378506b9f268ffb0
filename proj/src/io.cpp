#include "rmlattice/io.hpp"

#include <fstream>
#include <regex>
#include <set>
#include <sstream>

#include <json.hpp>

#include "rmlattice/errors.hpp"

namespace rmlattice {

namespace {

using Json = nlohmann::ordered_json;

constexpr std::size_t kRank = 4;
const Int kExactDoubleLimit = Int(1) << 53;

Json int_to_json(const Int& n) {
  if (abs(n) < kExactDoubleLimit) return Json(n.convert_to<std::int64_t>());
  return Json(to_string(n));
}

Int int_from_json(const Json& j, const std::string& where) {
  if (j.is_number_integer()) return Int(j.get<std::int64_t>());
  if (j.is_number_unsigned()) return Int(j.get<std::uint64_t>());
  if (j.is_string()) {
    static const std::regex decimal("-?(0|[1-9][0-9]*)");
    const auto& text = j.get_ref<const std::string&>();
    if (std::regex_match(text, decimal)) return Int(text);
  }
  throw FormatError(where + ": expected an integer");
}

Rational rational_from_json(const Json& j, const std::string& where) {
  static const std::regex fraction("(-?(?:0|[1-9][0-9]*))/([1-9][0-9]*)");
  std::smatch m;
  if (!j.is_string()) throw FormatError(where + ": expected a \"p/q\" string");
  const auto& text = j.get_ref<const std::string&>();
  if (!std::regex_match(text, m, fraction)) throw FormatError(where + ": expected \"p/q\"");
  const Int p(m[1].str()), q(m[2].str());
  if (gcd(p, q) != 1) throw FormatError(where + ": fraction is not reduced");
  return Rational(p, q);
}

Json matrix_to_json(const Matrix& m) {
  Json rows = Json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(int_to_json(m(i, j)));
    rows.push_back(std::move(row));
  }
  return rows;
}

const Json& square_rows(const Json& j, const std::string& where) {
  if (!j.is_array() || j.size() != kRank) throw FormatError(where + ": expected a 4x4 array");
  for (const auto& row : j)
    if (!row.is_array() || row.size() != kRank) throw FormatError(where + ": expected a 4x4 array");
  return j;
}

Matrix matrix_from_json(const Json& j, const std::string& where) {
  square_rows(j, where);
  Matrix m(kRank, kRank);
  for (std::size_t r = 0; r < kRank; ++r)
    for (std::size_t c = 0; c < kRank; ++c)
      m(r, c) = int_from_json(j[r][c], where + "[" + std::to_string(r) + "][" + std::to_string(c) + "]");
  return m;
}

void require_keys(const Json& j, const std::set<std::string>& keys, const std::string& where) {
  if (!j.is_object()) throw FormatError(where + ": expected an object");
  for (const auto& k : keys)
    if (!j.contains(k)) throw FormatError(where + ": missing \"" + k + "\"");
  for (const auto& item : j.items())
    if (!keys.count(item.key())) throw FormatError(where + ": unexpected \"" + item.key() + "\"");
}

Json instance_to_json(const PolarizedRMSurface& s) {
  Json j;
  j["order"] = Json{{"D", int_to_json(s.order.D)}, {"conductor", int_to_json(s.order.conductor)}};
  j["omega_action"] = matrix_to_json(s.action);
  j["gram"] = matrix_to_json(s.gram);
  j["format_version"] = kFormatVersion;
  return j;
}

PolarizedRMSurface instance_from_json(const Json& j, const std::string& where) {
  require_keys(j, {"order", "omega_action", "gram", "format_version"}, where);
  if (int_from_json(j["format_version"], where + ".format_version") != kFormatVersion)
    throw FormatError(where + ".format_version: unsupported version");
  require_keys(j["order"], {"D", "conductor"}, where + ".order");
  const Int d = int_from_json(j["order"]["D"], where + ".order.D");
  const Int f = int_from_json(j["order"]["conductor"], where + ".order.conductor");
  PolarizedRMSurface s;
  try {
    s.order = make_order(d, f);
  } catch (const std::invalid_argument& e) {
    throw FormatError(where + ".order: " + e.what());
  }
  s.action = matrix_from_json(j["omega_action"], where + ".omega_action");
  s.gram = matrix_from_json(j["gram"], where + ".gram");
  return s;
}

Json parse_text(const std::string& text) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw FormatError(std::string("malformed JSON: ") + e.what());
  }
}

// dump(2) with innermost arrays (matrix rows, alpha) kept on one line.
std::string render(const Json& j) {
  static const std::regex leaf_array(R"(\[\s*([^\[\]{}]*?)\s*\])");
  static const std::regex separator(R"(,\s+)");
  const std::string text = j.dump(2);
  std::string out;
  auto last = text.cbegin();
  for (std::sregex_iterator it(text.begin(), text.end(), leaf_array), end; it != end; ++it) {
    out.append(last, (*it)[0].first);
    out += "[" + std::regex_replace((*it)[1].str(), separator, ", ") + "]";
    last = (*it)[0].second;
  }
  out.append(last, text.cend());
  return out + "\n";
}

template <class T, class F>
Json optional_to_json(const std::optional<T>& v, F&& f) {
  return v ? f(*v) : Json(nullptr);
}

}  // namespace

std::string serialize_instance(const PolarizedRMSurface& s) {
  return render(instance_to_json(s));
}

PolarizedRMSurface parse_instance(const std::string& text) {
  return instance_from_json(parse_text(text), "instance");
}

std::string serialize_certificate(const PipelineReport& report) {
  Json j;
  j["seed"] = int_to_json(Int(report.seed));
  Json steps = Json::array();
  for (const auto& st : report.steps) {
    Json js;
    js["kind"] = to_string(st.kind);
    js["prime"] = int_to_json(st.prime);
    js["kernel_overlattice"] = optional_to_json(st.kernel, [](const KernelSubgroup& k) {
      Json rows = Json::array();
      for (std::size_t r = 0; r < k.basis.rows(); ++r) {
        Json row = Json::array();
        for (std::size_t c = 0; c < k.basis.cols(); ++c) row.push_back(to_string(k.entry(r, c)));
        rows.push_back(std::move(row));
      }
      return rows;
    });
    js["alpha"] = optional_to_json(st.alpha, [](const OrderElement& a) {
      return Json::array({int_to_json(a.x), int_to_json(a.y)});
    });
    js["degree_before"] = int_to_json(st.degree_before);
    js["degree_after"] = int_to_json(st.degree_after);
    js["t"] = optional_to_json(st.t, [](int t) { return Json(t); });
    js["branch"] = optional_to_json(st.branch, [](const std::string& b) { return Json(b); });
    steps.push_back(std::move(js));
  }
  j["steps"] = std::move(steps);
  j["final"] = instance_to_json(report.output);
  return render(j);
}

PipelineReport parse_certificate(const std::string& text) {
  const Json j = parse_text(text);
  require_keys(j, {"seed", "steps", "final"}, "certificate");
  PipelineReport report;
  const Int seed = int_from_json(j["seed"], "seed");
  if (seed < 0 || seed >= kExactDoubleLimit) throw FormatError("seed: out of range");
  report.seed = seed.convert_to<std::uint64_t>();
  if (!j["steps"].is_array()) throw FormatError("steps: expected an array");
  for (std::size_t i = 0; i < j["steps"].size(); ++i) {
    const std::string where = "steps[" + std::to_string(i) + "]";
    const Json& js = j["steps"][i];
    require_keys(js, {"kind", "prime", "kernel_overlattice", "alpha", "degree_before", "degree_after", "t", "branch"},
                 where);
    IsogenyStep st;
    if (!js["kind"].is_string()) throw FormatError(where + ".kind: expected a string");
    auto kind = parse_step_kind(js["kind"].get<std::string>());
    if (!kind) throw FormatError(where + ".kind: unknown step kind");
    st.kind = *kind;
    st.prime = int_from_json(js["prime"], where + ".prime");
    if (!js["kernel_overlattice"].is_null()) {
      const Json& rows = square_rows(js["kernel_overlattice"], where + ".kernel_overlattice");
      std::vector<std::vector<Rational>> q(kRank, std::vector<Rational>(kRank));
      Int den = 1;
      for (std::size_t r = 0; r < kRank; ++r)
        for (std::size_t c = 0; c < kRank; ++c) {
          q[r][c] = rational_from_json(rows[r][c], where + ".kernel_overlattice");
          den = lcm(den, boost::multiprecision::denominator(q[r][c]));
        }
      KernelSubgroup k{Matrix(kRank, kRank), den};
      for (std::size_t r = 0; r < kRank; ++r)
        for (std::size_t c = 0; c < kRank; ++c)
          k.basis(r, c) = boost::multiprecision::numerator(q[r][c]) *
                          (den / boost::multiprecision::denominator(q[r][c]));
      st.kernel = std::move(k);
    }
    if (!js["alpha"].is_null()) {
      if (!js["alpha"].is_array() || js["alpha"].size() != 2)
        throw FormatError(where + ".alpha: expected [x, y]");
      st.alpha = OrderElement{int_from_json(js["alpha"][0], where + ".alpha"),
                              int_from_json(js["alpha"][1], where + ".alpha")};
    }
    st.degree_before = int_from_json(js["degree_before"], where + ".degree_before");
    st.degree_after = int_from_json(js["degree_after"], where + ".degree_after");
    if (!js["t"].is_null()) {
      const Int t = int_from_json(js["t"], where + ".t");
      if (t < 0 || t > 4) throw FormatError(where + ".t: out of range");
      st.t = t.convert_to<int>();
    }
    if (!js["branch"].is_null()) {
      if (!js["branch"].is_string()) throw FormatError(where + ".branch: expected a string");
      st.branch = js["branch"].get<std::string>();
    }
    report.steps.push_back(std::move(st));
  }
  report.output = instance_from_json(j["final"], "final");
  return report;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

void write_file(const std::string& path, const std::string& contents) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << contents;
  if (!out) throw std::runtime_error("write failed for " + path);
}

}  // namespace rmlattice
