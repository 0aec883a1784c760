#include "symgf/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>
#include <tuple>

#include <json.hpp>

#include "symgf/errors.hpp"

namespace symgf {

using nlohmann::json;

std::string format_double(double v) {
  if (!std::isfinite(v)) return "null";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void JsonWriter::newline() {
  if (indent_ <= 0) return;
  out_ += '\n';
  out_.append(stack_.size() * indent_, ' ');
}

void JsonWriter::before_value() {
  if (after_key_) {
    after_key_ = false;
    return;
  }
  if (!stack_.empty()) {
    if (!stack_.back().array) throw ArgumentError("JsonWriter: object member without key");
    if (stack_.back().count++ > 0) out_ += ',';
    newline();
  }
}

JsonWriter& JsonWriter::begin_object() {
  before_value();
  out_ += '{';
  stack_.push_back({false, 0});
  return *this;
}

JsonWriter& JsonWriter::end_object() {
  if (stack_.empty() || stack_.back().array) throw ArgumentError("JsonWriter: unbalanced object");
  const bool empty = stack_.back().count == 0;
  stack_.pop_back();
  if (!empty) newline();
  out_ += '}';
  return *this;
}

JsonWriter& JsonWriter::begin_array() {
  before_value();
  out_ += '[';
  stack_.push_back({true, 0});
  return *this;
}

JsonWriter& JsonWriter::end_array() {
  if (stack_.empty() || !stack_.back().array) throw ArgumentError("JsonWriter: unbalanced array");
  const bool empty = stack_.back().count == 0;
  stack_.pop_back();
  if (!empty) newline();
  out_ += ']';
  return *this;
}

JsonWriter& JsonWriter::key(std::string_view k) {
  if (stack_.empty() || stack_.back().array) throw ArgumentError("JsonWriter: key outside object");
  if (stack_.back().count++ > 0) out_ += ',';
  newline();
  out_ += json(std::string(k)).dump();
  out_ += indent_ > 0 ? ": " : ":";
  after_key_ = true;
  return *this;
}

JsonWriter& JsonWriter::value(double v) {
  before_value();
  out_ += format_double(v);
  return *this;
}

JsonWriter& JsonWriter::value(int v) { return value(static_cast<long long>(v)); }

JsonWriter& JsonWriter::value(long long v) {
  before_value();
  out_ += std::to_string(v);
  return *this;
}

JsonWriter& JsonWriter::value(bool v) {
  before_value();
  out_ += v ? "true" : "false";
  return *this;
}

JsonWriter& JsonWriter::value(std::string_view v) {
  before_value();
  out_ += json(std::string(v)).dump();
  return *this;
}

JsonWriter& JsonWriter::value(std::span<const double> v) {
  // Short numeric arrays stay on one line.
  before_value();
  out_ += '[';
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i > 0) out_ += ", ";
    out_ += format_double(v[i]);
  }
  out_ += ']';
  return *this;
}

JsonWriter& JsonWriter::null() {
  before_value();
  out_ += "null";
  return *this;
}

void write_json(JsonWriter& w, const VerificationReport& r) {
  w.begin_object();
  w.key("axiom").value(r.axiom);
  w.key("passed").value(r.passed());
  w.key("max").value(r.max);
  w.key("mean").value(r.mean);
  w.key("n").value(r.n);
  w.key("tol").value(r.tol);
  w.key("failure_count").value(r.failure_count);
  w.key("error_count").value(r.error_count);
  w.key("failures").begin_array();
  for (const Failure& f : r.failures) {
    w.begin_object();
    w.key("point").value(std::span<const double>(f.point));
    w.key("residual").value(f.residual);
    if (!f.error.empty()) w.key("error").value(f.error);
    w.end_object();
  }
  w.end_array();
  w.key("bracket_sign").value(r.bracket_sign);
  w.key("grid").begin_object();
  w.key("n").value(r.grid.n);
  w.key("p_radius").value(r.p_radius);
  w.key("x_lo").value(std::span<const double>(r.grid.x_lo));
  w.key("x_hi").value(std::span<const double>(r.grid.x_hi));
  w.key("seed").value(static_cast<long long>(r.grid.seed));
  w.end_object();
  if (!r.info.empty()) {
    w.key("info").begin_object();
    for (const auto& [k, v] : r.info) w.key(k).value(v);
    w.end_object();
  }
  w.end_object();
}

std::string to_json(const VerificationReport& r) {
  JsonWriter w;
  write_json(w, r);
  return w.str();
}

namespace {

json parse_or_throw(std::string_view text) {
  try {
    return json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    throw InputError(std::string("malformed JSON: ") + e.what());
  }
}

template <class T>
T get_field(const json& j, const char* key, const char* context) {
  if (!j.is_object() || !j.contains(key)) {
    throw InputError(std::string(context) + ": missing field '" + key + "'");
  }
  try {
    return j.at(key).get<T>();
  } catch (const json::exception& e) {
    throw InputError(std::string(context) + ": bad field '" + key + "': " + e.what());
  }
}

int positive_dim(const json& j, const char* key, const char* context) {
  const int v = get_field<int>(j, key, context);
  if (v < 0 || (v == 0 && std::string(key) != "m")) {
    throw InputError(std::string(context) + ": '" + key + "' must be positive");
  }
  return v;
}

std::vector<int> exponents(const json& t, const char* key, int len, const char* context) {
  auto e = get_field<std::vector<int>>(t, key, context);
  if (static_cast<int>(e.size()) != len) {
    throw InputError(std::string(context) + ": '" + key + "' must have " + std::to_string(len) +
                     " entries");
  }
  for (int v : e) {
    if (v < 0) throw InputError(std::string(context) + ": negative exponent");
  }
  return e;
}

const json& terms_of(const json& j, const char* context) {
  if (!j.contains("terms") || !j.at("terms").is_array()) {
    throw InputError(std::string(context) + ": 'terms' must be an array");
  }
  return j.at("terms");
}

}  // namespace

MonoidGenFun LoadedGenFun::as_monoid() const {
  if (!monoid) throw InputError("generating function is not a monoid (needs m = 2d, n = d)");
  return MonoidGenFun(genfun);
}

LoadedGenFun parse_genfun(std::string_view text, std::string label) {
  const json j = parse_or_throw(text);
  constexpr const char* ctx = "generating function";
  if (!j.is_object()) throw InputError("generating function: expected an object");
  LoadedGenFun out;
  std::vector<PolyTerm> terms;
  if (j.contains("d")) {
    const int d = positive_dim(j, "d", ctx);
    for (const json& t : terms_of(j, ctx)) {
      PolyTerm term;
      term.coeff = get_field<double>(t, "coeff", ctx);
      term.p = exponents(t, "p1", d, ctx);
      const auto p2 = exponents(t, "p2", d, ctx);
      term.p.insert(term.p.end(), p2.begin(), p2.end());
      term.x = exponents(t, "x", d, ctx);
      terms.push_back(std::move(term));
    }
    out.monoid = true;
    out.d = d;
    out.genfun = poly_genfun(2 * d, d, std::move(terms), std::move(label));
    return out;
  }
  const int m = positive_dim(j, "m", ctx);
  const int n = positive_dim(j, "n", ctx);
  for (const json& t : terms_of(j, ctx)) {
    PolyTerm term;
    term.coeff = get_field<double>(t, "coeff", ctx);
    term.p = exponents(t, "p", m, ctx);
    term.x = exponents(t, "x", n, ctx);
    terms.push_back(std::move(term));
  }
  out.genfun = poly_genfun(m, n, std::move(terms), std::move(label));
  out.monoid = (m == 2 * n);
  out.d = out.monoid ? n : 0;
  return out;
}

PolyPoisson parse_poisson(std::string_view text) {
  const json j = parse_or_throw(text);
  constexpr const char* ctx = "Poisson bivector";
  const int d = positive_dim(j, "d", ctx);
  std::vector<PolyPoisson::Entry> entries;
  for (const json& t : terms_of(j, ctx)) {
    const auto p1 = exponents(t, "p1", d, ctx);
    const auto p2 = exponents(t, "p2", d, ctx);
    auto unit_index = [&](const std::vector<int>& e) {
      int idx = -1;
      int total = 0;
      for (int i = 0; i < d; ++i) {
        total += e[i];
        if (e[i] == 1) idx = i;
      }
      if (total != 1) throw InputError("Poisson bivector: p1 and p2 must be unit exponent vectors");
      return idx;
    };
    const int i = unit_index(p1);
    const int k = unit_index(p2);
    if (i == k) throw InputError("Poisson bivector: diagonal entry alpha^{ii}");
    entries.push_back({i, k, {get_field<double>(t, "coeff", ctx), exponents(t, "x", d, ctx)}});
  }
  return PolyPoisson(d, entries);
}

LieStructure parse_lie(std::string_view text, std::string name) {
  const json j = parse_or_throw(text);
  constexpr const char* ctx = "Lie structure";
  const int d = positive_dim(j, "d", ctx);
  if (!j.contains("c") || !j.at("c").is_array()) throw InputError("Lie structure: 'c' must be an array");
  std::vector<double> c(static_cast<std::size_t>(d) * d * d, 0.0);
  std::map<std::tuple<int, int, int>, double> seen;
  for (const json& e : j.at("c")) {
    if (!e.is_array() || e.size() != 4) {
      throw InputError("Lie structure: entries must be [i, j, k, value]");
    }
    int i, jj, k;
    double v;
    try {
      i = e[0].get<int>();
      jj = e[1].get<int>();
      k = e[2].get<int>();
      v = e[3].get<double>();
    } catch (const json::exception& ex) {
      throw InputError(std::string("Lie structure: bad entry: ") + ex.what());
    }
    if (i < 0 || jj < 0 || k < 0 || i >= d || jj >= d || k >= d) {
      throw InputError("Lie structure: index out of range");
    }
    if (i == jj && v != 0.0) throw InputError("Lie structure: [e_i, e_i] must vanish");
    auto set = [&](int a, int b, double val) {
      const auto key = std::make_tuple(a, b, k);
      if (auto it = seen.find(key); it != seen.end() && it->second != val) {
        throw InputError("Lie structure: conflicting entries for c^k_{ij}");
      }
      seen[key] = val;
      c[(a * d + b) * d + k] = val;
    };
    set(i, jj, v);
    set(jj, i, -v);
  }
  try {
    return LieStructure(d, std::move(c), std::move(name));
  } catch (const ArgumentError& e) {
    throw InputError(e.what());
  }
}

Matrix parse_matrix(std::string_view text) {
  const json j = parse_or_throw(text);
  const auto rows = get_field<std::vector<std::vector<double>>>(j, "matrix", "matrix");
  if (rows.empty() || rows[0].empty()) throw InputError("matrix: empty");
  try {
    return Matrix::from_rows(rows);
  } catch (const ArgumentError& e) {
    throw InputError(std::string("matrix: ") + e.what());
  }
}

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open '" + path.string() + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

LoadedGenFun load_genfun(const std::filesystem::path& path) {
  return parse_genfun(read_text_file(path), path.stem().string());
}

PolyPoisson load_poisson(const std::filesystem::path& path) {
  return parse_poisson(read_text_file(path));
}

LieStructure load_lie(const std::filesystem::path& path) {
  return parse_lie(read_text_file(path), path.stem().string());
}

Matrix load_matrix(const std::filesystem::path& path) { return parse_matrix(read_text_file(path)); }

}  // namespace symgf
