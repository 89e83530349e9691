#include "arakelov/json_io.hpp"

#include <json.hpp>

#include "arakelov/rational.hpp"

namespace arakelov {
namespace jsonio {

using json = nlohmann::ordered_json;

namespace {

[[noreturn]] void fail(const std::string& msg) { throw SchemaError(msg); }

const json& need(const json& j, const char* key) {
  auto it = j.find(key);
  if (it == j.end()) fail(std::string("missing field '") + key + "'");
  return *it;
}

long need_integer(const json& j, const char* key, long lo) {
  const json& v = need(j, key);
  if (!v.is_number_integer())
    fail(std::string("field '") + key + "' must be an integer");
  long x = v.get<long>();
  if (x < lo)
    fail(std::string("field '") + key + "' is out of range");
  return x;
}

void reject_unknown(const json& j, std::initializer_list<const char*> known) {
  for (auto it = j.begin(); it != j.end(); ++it) {
    bool ok = false;
    for (const char* k : known)
      if (it.key() == k) ok = true;
    if (!ok) fail("unknown field '" + it.key() + "'");
  }
}

QMatrix parse_qmatrix(const json& v, int rows, int cols, const char* name) {
  // cols < 0 means: any positive width, report what was found via the
  // matrix itself
  if (!v.is_array() || static_cast<int>(v.size()) != rows)
    fail(std::string("field '") + name + "' must have " +
         std::to_string(rows) + " rows");
  int width = -1;
  for (const auto& row : v) {
    if (!row.is_array()) fail(std::string("field '") + name + "' rows must be arrays");
    if (width < 0) width = static_cast<int>(row.size());
    if (static_cast<int>(row.size()) != width)
      fail(std::string("field '") + name + "' has ragged rows");
  }
  if (width < 1) fail(std::string("field '") + name + "' has empty rows");
  if (cols >= 0 && width != cols)
    fail(std::string("field '") + name + "' must have " +
         std::to_string(cols) + " columns");
  QMatrix m(rows, width);
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < width; ++j) {
      const json& cell = v[i][j];
      if (!cell.is_string())
        fail(std::string("field '") + name +
             "' entries must be rational strings");
      try {
        m(i, j) = parse_rational(cell.get<std::string>());
      } catch (const Error& e) {
        fail(std::string("field '") + name + "': " + e.what());
      }
    }
  return m;
}

symspace::CMatrix parse_cmatrix(const json& v, int rows, int cols,
                                const char* name) {
  if (!v.is_array() || static_cast<int>(v.size()) != rows)
    fail(std::string("field '") + name + "' must have " +
         std::to_string(rows) + " rows");
  int width = -1;
  for (const auto& row : v) {
    if (!row.is_array()) fail(std::string("field '") + name + "' rows must be arrays");
    if (width < 0) width = static_cast<int>(row.size());
    if (static_cast<int>(row.size()) != width)
      fail(std::string("field '") + name + "' has ragged rows");
  }
  if (width < 1) fail(std::string("field '") + name + "' has empty rows");
  if (cols >= 0 && width != cols)
    fail(std::string("field '") + name + "' must have " +
         std::to_string(cols) + " columns");
  symspace::CMatrix m(rows, width);
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < width; ++j) {
      const json& cell = v[i][j];
      if (!cell.is_object() || cell.size() != 2 || !cell.contains("re") ||
          !cell.contains("im") || !cell["re"].is_number() ||
          !cell["im"].is_number())
        fail(std::string("field '") + name +
             "' entries must be {re, im} objects");
      m(i, j) = symspace::Complex(cell["re"].get<double>(),
                                  cell["im"].get<double>());
    }
  return m;
}

json dump_qmatrix(const QMatrix& m) {
  json rows = json::array();
  for (int i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (int j = 0; j < m.cols(); ++j) row.push_back(format_rational(m(i, j)));
    rows.push_back(std::move(row));
  }
  return rows;
}

json dump_cmatrix(const symspace::CMatrix& m) {
  json rows = json::array();
  for (long i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (long j = 0; j < m.cols(); ++j) {
      json cell;
      cell["re"] = m(i, j).real();
      cell["im"] = m(i, j).imag();
      row.push_back(std::move(cell));
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

json parse_text(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    fail(std::string("invalid JSON: ") + e.what());
  }
  if (!j.is_object()) fail("document must be a JSON object");
  return j;
}

bool matrices_equal(const symspace::CMatrix& x, const symspace::CMatrix& y) {
  if (x.rows() != y.rows() || x.cols() != y.cols()) return false;
  for (long i = 0; i < x.rows(); ++i)
    for (long j = 0; j < x.cols(); ++j)
      if (x(i, j) != y(i, j)) return false;
  return true;
}

bool opt_equal(const std::optional<symspace::CMatrix>& x,
               const std::optional<symspace::CMatrix>& y) {
  if (x.has_value() != y.has_value()) return false;
  return !x || matrices_equal(*x, *y);
}

}  // namespace

bool operator==(const ArchDoc& x, const ArchDoc& y) {
  return x.n == y.n && matrices_equal(x.a, y.a) && matrices_equal(x.b, y.b) &&
         matrices_equal(x.c, y.c) && matrices_equal(x.d, y.d) &&
         opt_equal(x.h_a, y.h_a) && opt_equal(x.h_b, y.h_b) &&
         opt_equal(x.h0, y.h0);
}

InstanceDocument parse_instance(const std::string& text) {
  json j = parse_text(text);
  const json& place = need(j, "place");
  if (!place.is_string()) fail("field 'place' must be a string");
  std::string where = place.get<std::string>();

  InstanceDocument doc;
  if (j.contains("seed")) {
    const json& s = j["seed"];
    if (!s.is_number_integer() ||
        (!s.is_number_unsigned() && s.get<long long>() < 0))
      fail("field 'seed' must be a nonnegative integer");
    doc.seed = s.get<std::uint64_t>();
  }

  int n = static_cast<int>(need_integer(j, "n", 2));

  if (where == "finite") {
    reject_unknown(j, {"place", "n", "prime", "A", "B", "C", "D", "L_A",
                       "L_B", "seed"});
    FiniteDoc f;
    f.n = n;
    f.prime = need_integer(j, "prime", 2);
    f.a = parse_qmatrix(need(j, "A"), n, -1, "A");
    f.b = parse_qmatrix(need(j, "B"), n, f.a.cols(), "B");
    f.c = parse_qmatrix(need(j, "C"), n, -1, "C");
    f.d = parse_qmatrix(need(j, "D"), n, f.c.cols(), "D");
    if (f.a.cols() + f.c.cols() != n)
      fail("widths of A and C must add up to n");
    if (j.contains("L_A"))
      f.l_a = parse_qmatrix(j["L_A"], n, f.a.cols(), "L_A");
    if (j.contains("L_B"))
      f.l_b = parse_qmatrix(j["L_B"], n, f.b.cols(), "L_B");
    doc.finite = std::move(f);
  } else if (where == "archimedean") {
    reject_unknown(j, {"place", "n", "A", "B", "C", "D", "h_A", "h_B", "h0",
                       "seed"});
    ArchDoc a;
    a.n = n;
    a.a = parse_cmatrix(need(j, "A"), n, -1, "A");
    a.b = parse_cmatrix(need(j, "B"), n, static_cast<int>(a.a.cols()), "B");
    a.c = parse_cmatrix(need(j, "C"), n, -1, "C");
    a.d = parse_cmatrix(need(j, "D"), n, static_cast<int>(a.c.cols()), "D");
    if (a.a.cols() + a.c.cols() != n)
      fail("widths of A and C must add up to n");
    int p = static_cast<int>(a.a.cols());
    if (j.contains("h_A")) a.h_a = parse_cmatrix(j["h_A"], p, p, "h_A");
    if (j.contains("h_B")) a.h_b = parse_cmatrix(j["h_B"], p, p, "h_B");
    if (j.contains("h0")) {
      int d0 = n - 2 * p;
      if (d0 <= 0) fail("field 'h0' needs a nontrivial overlap of C and D");
      a.h0 = parse_cmatrix(j["h0"], d0, d0, "h0");
    }
    doc.arch = std::move(a);
  } else {
    fail("field 'place' must be \"finite\" or \"archimedean\"");
  }
  return doc;
}

std::string serialize_instance(const InstanceDocument& doc, bool pretty) {
  if (doc.finite.has_value() == doc.arch.has_value())
    throw Error("serialize_instance: document must hold exactly one place");
  json j;
  if (doc.finite) {
    const FiniteDoc& f = *doc.finite;
    j["place"] = "finite";
    j["n"] = f.n;
    j["prime"] = f.prime;
    j["A"] = dump_qmatrix(f.a);
    j["B"] = dump_qmatrix(f.b);
    j["C"] = dump_qmatrix(f.c);
    j["D"] = dump_qmatrix(f.d);
    if (f.l_a) j["L_A"] = dump_qmatrix(*f.l_a);
    if (f.l_b) j["L_B"] = dump_qmatrix(*f.l_b);
  } else {
    const ArchDoc& a = *doc.arch;
    j["place"] = "archimedean";
    j["n"] = a.n;
    j["A"] = dump_cmatrix(a.a);
    j["B"] = dump_cmatrix(a.b);
    j["C"] = dump_cmatrix(a.c);
    j["D"] = dump_cmatrix(a.d);
    if (a.h_a) j["h_A"] = dump_cmatrix(*a.h_a);
    if (a.h_b) j["h_B"] = dump_cmatrix(*a.h_b);
    if (a.h0) j["h0"] = dump_cmatrix(*a.h0);
  }
  if (doc.seed) j["seed"] = *doc.seed;
  return pretty ? j.dump(2) : j.dump();
}

BuildingQuery parse_building(const std::string& text) {
  json j = parse_text(text);
  reject_unknown(j, {"n", "prime", "x", "y", "W", "W1", "W2", "k_max", "m"});
  BuildingQuery q;
  q.n = static_cast<int>(need_integer(j, "n", 1));
  q.prime = need_integer(j, "prime", 2);
  auto lattice_field = [&](const char* key) -> std::optional<QMatrix> {
    if (!j.contains(key)) return std::nullopt;
    return parse_qmatrix(j[key], q.n, q.n, key);
  };
  auto span_field = [&](const char* key) -> std::optional<QMatrix> {
    if (!j.contains(key)) return std::nullopt;
    return parse_qmatrix(j[key], q.n, -1, key);
  };
  q.x = lattice_field("x");
  q.y = lattice_field("y");
  q.w = span_field("W");
  q.w1 = span_field("W1");
  q.w2 = span_field("W2");
  if (j.contains("k_max")) q.k_max = need_integer(j, "k_max", 0);
  if (j.contains("m")) q.m = need_integer(j, "m", 0);
  return q;
}

std::string serialize_result(const ResultDocument& r, bool pretty) {
  json j;
  j["place"] = r.place;
  json vals;
  for (const auto& [k, v] : r.values) vals[k] = v;
  j["values"] = std::move(vals);
  j["agree"] = r.agree;
  if (!r.mismatch.empty()) j["mismatch"] = r.mismatch;
  for (const auto& [k, v] : r.extras) j[k] = v;
  if (r.seconds) j["timing_seconds"] = *r.seconds;
  return pretty ? j.dump(2) : j.dump();
}

std::string format_real(double x) { return json(x).dump(); }

}  // namespace jsonio
}  // namespace arakelov
