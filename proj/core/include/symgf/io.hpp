#pragma once

#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "symgf/genfun.hpp"
#include "symgf/lie.hpp"
#include "symgf/matrix.hpp"
#include "symgf/poly.hpp"
#include "symgf/verify.hpp"

namespace symgf {

// Streaming pretty-printer. Floats are written with 17 significant digits;
// non-finite values become null.
class JsonWriter {
 public:
  explicit JsonWriter(int indent = 2) : indent_(indent) {}

  JsonWriter& begin_object();
  JsonWriter& end_object();
  JsonWriter& begin_array();
  JsonWriter& end_array();
  JsonWriter& key(std::string_view k);
  JsonWriter& value(double v);
  JsonWriter& value(int v);
  JsonWriter& value(long long v);
  JsonWriter& value(bool v);
  JsonWriter& value(std::string_view v);
  JsonWriter& value(const char* v) { return value(std::string_view(v)); }
  JsonWriter& value(std::span<const double> v);
  JsonWriter& null();

  const std::string& str() const { return out_; }

 private:
  struct Level {
    bool array;
    int count;
  };
  void before_value();
  void newline();

  int indent_;
  std::string out_;
  std::vector<Level> stack_;
  bool after_key_ = false;
};

std::string format_double(double v);

void write_json(JsonWriter& w, const VerificationReport& r);
std::string to_json(const VerificationReport& r);

// A generating function read from JSON. Monoid files carry "d" with terms
// over p1, p2, x; general files carry "m", "n" with terms over p, x.
struct LoadedGenFun {
  GenFun genfun;
  bool monoid = false;
  int d = 0;
  MonoidGenFun as_monoid() const;
};

// All loaders throw InputError on malformed input, InvalidGenFunError on
// normalization violations.
LoadedGenFun parse_genfun(std::string_view json, std::string label = "poly");
LoadedGenFun load_genfun(const std::filesystem::path& path);

// Same term schema as monoid generating functions: a term with p1 = e_i,
// p2 = e_j contributes coeff * x^x to alpha^{ij}.
PolyPoisson parse_poisson(std::string_view json);
PolyPoisson load_poisson(const std::filesystem::path& path);

// {"d": 3, "c": [[i, j, k, value], ...]}, 0-based; c^k_{ji} = -c^k_{ij} is
// filled in automatically.
LieStructure parse_lie(std::string_view json, std::string name = "lie");
LieStructure load_lie(const std::filesystem::path& path);

// {"matrix": [[...], ...]}
Matrix parse_matrix(std::string_view json);
Matrix load_matrix(const std::filesystem::path& path);

std::string read_text_file(const std::filesystem::path& path);

}  // namespace symgf
