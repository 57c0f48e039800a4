#include "qps/serialize.hpp"

#include "qps/error.hpp"

#include <numeric>

namespace qps {

namespace {

const Json& field(const Json& j, const char* name) {
  if (!j.is_object()) throw SchemaError(std::string("expected an object holding '") + name + "'");
  auto it = j.find(name);
  if (it == j.end()) throw SchemaError(std::string("missing field '") + name + "'");
  return *it;
}

const Json& array_field(const Json& j, const char* name) {
  const Json& a = field(j, name);
  if (!a.is_array()) throw SchemaError(std::string("field '") + name + "' must be an array");
  return a;
}

std::size_t size_from_json(const Json& j, const char* what) {
  Integer v = integer_from_json(j);
  if (v < 0 || !v.fits_ulong_p()) throw SchemaError(std::string(what) + " must be a small non-negative integer");
  return v.get_ui();
}

IntVector int_vector(const Json& j, std::size_t len, const char* what) {
  if (!j.is_array()) throw SchemaError(std::string(what) + " must be an array");
  if (j.size() != len) throw SchemaError(std::string(what) + " has wrong length");
  IntVector v;
  for (const auto& e : j) v.push_back(integer_from_json(e));
  return v;
}

Json int_vector_json(std::span<const Integer> v) {
  Json a = Json::array();
  for (const auto& e : v) a.push_back(integer_to_json(e));
  return a;
}

IntMatrix int_matrix(const Json& j, std::size_t rows, std::size_t cols, const char* what) {
  if (!j.is_array() || j.size() != rows) throw SchemaError(std::string(what) + " must have " + std::to_string(rows) + " rows");
  IntMatrix m;
  for (const auto& row : j) m.push_back(int_vector(row, cols, what));
  return m;
}

Json int_matrix_json(const IntMatrix& m) {
  Json a = Json::array();
  for (const auto& row : m) a.push_back(int_vector_json(row));
  return a;
}

Domain domain_from_json(const Json& j) {
  if (j == "N") return Domain::Natural;
  if (j == "Z") return Domain::Integer;
  throw SchemaError("domain must be \"N\" or \"Z\"");
}

template <class F>
auto wrap(F&& f) -> decltype(f()) {
  // Library exceptions from nlohmann become schema errors.
  try {
    return f();
  } catch (const Json::exception& e) {
    throw SchemaError(e.what());
  }
}

}  // namespace

Json integer_to_json(const Integer& v) {
  if (v.fits_slong_p()) return Json(static_cast<std::int64_t>(v.get_si()));
  return Json(v.get_str());
}

Integer integer_from_json(const Json& j) {
  if (j.is_number_integer()) {
    if (j.is_number_unsigned()) return Integer(std::to_string(j.get<std::uint64_t>()));
    return Integer(std::to_string(j.get<std::int64_t>()));
  }
  if (j.is_string()) return parse_integer(j.get<std::string>());
  throw SchemaError("expected an integer");
}

Json poly_to_json(const MultiPoly& p) {
  Json out = Json::array();
  for (const auto& [exps, c] : p.terms()) {
    out.push_back(Json{{"exponents", exps}, {"coeff", to_string(c)}});
  }
  return out;
}

MultiPoly poly_from_json(const Json& j, std::size_t nvars) {
  if (!j.is_array()) throw SchemaError("polynomial must be an array of terms");
  MultiPoly p(nvars);
  for (const auto& term : j) {
    const Json& e = array_field(term, "exponents");
    if (e.size() != nvars) throw SchemaError("exponent vector has wrong length");
    MultiPoly::Exponents exps;
    for (const auto& x : e) {
      if (!x.is_number_unsigned()) throw SchemaError("exponents must be non-negative integers");
      exps.push_back(x.get<unsigned>());
    }
    const Json& c = field(term, "coeff");
    if (!c.is_string()) throw SchemaError("coefficients must be \"p/q\" strings");
    p.add_term(exps, parse_rational(c.get<std::string>()));
  }
  return p;
}

Json qp_to_json(const QuasiPolynomial& q0) {
  const QuasiPolynomial q = q0.normalized();
  const std::int64_t d = q.period();
  Json table = Json::array();
  for (const auto& [r, p] : q.table()) table.push_back(Json{{"residues", r}, {"poly", poly_to_json(p)}});
  Json out{{"dim", q.dim()}, {"period", d}, {"table", std::move(table)}};
  // Without a lattice the table is read over d Z^t. Otherwise classes are
  // keyed by their canonical representatives, which avoids listing each
  // class once per residue mod d.
  if (!(q.lattice() == PeriodLattice::scaled(q.dim(), d))) out["lattice"] = q.lattice().basis();
  return out;
}

QuasiPolynomial qp_from_json(const Json& j) {
  return wrap([&] {
    const std::size_t dim = size_from_json(field(j, "dim"), "dim");
    const Integer period = integer_from_json(field(j, "period"));
    if (period < 1 || period > 1000000) throw SchemaError("period must be a positive integer (at most 10^6)");
    const std::int64_t d = period.get_si();
    PeriodLattice lattice = PeriodLattice::scaled(dim, d);
    if (j.contains("lattice")) {
      const Json& rows = array_field(j, "lattice");
      if (rows.size() != dim) throw SchemaError("lattice needs one basis row per coordinate");
      std::vector<IntVector> basis;
      for (const auto& row : rows) {
        if (!row.is_array() || row.size() != dim) throw SchemaError("lattice row has wrong length");
        IntVector v;
        for (const auto& x : row) {
          if (!x.is_number_integer()) throw SchemaError("lattice entries must be integers");
          v.emplace_back(static_cast<long>(x.get<std::int64_t>()));
        }
        basis.push_back(std::move(v));
      }
      try {
        lattice = PeriodLattice::generated(dim, basis);
      } catch (const Error&) {
        throw SchemaError("lattice rows must span a full-rank lattice");
      }
      std::vector<PeriodLattice::Row> given;
      for (const auto& row : basis) {
        PeriodLattice::Row r;
        for (const auto& v : row) r.push_back(v.get_si());
        given.push_back(std::move(r));
      }
      if (given != lattice.basis()) throw SchemaError("lattice must be given in Hermite normal form");
      if (lattice.exponent() != d) throw SchemaError("period must be the exponent of the lattice");
    }
    QuasiPolynomial q(lattice);
    for (const auto& entry : array_field(j, "table")) {
      const Json& r = array_field(entry, "residues");
      if (r.size() != dim) throw SchemaError("residue vector has wrong length");
      Residues res;
      for (const auto& x : r) {
        if (!x.is_number_integer() || x.get<std::int64_t>() < 0 || x.get<std::int64_t>() >= d) {
          throw SchemaError("residues must lie in [0, period)");
        }
        res.push_back(x.get<std::int64_t>());
      }
      Residues canonical = res;
      lattice.reduce_in_place(canonical);
      if (canonical != res) throw SchemaError("residues must be canonical representatives of the lattice");
      if (q.find_exact(res) != nullptr) throw SchemaError("duplicate residue class");
      q.set(res, poly_from_json(field(entry, "poly"), dim));
    }
    return q.normalized();
  });
}

Json arrangement_to_json(const Arrangement& a) {
  Json planes = Json::array();
  for (const auto& h : a.planes()) {
    planes.push_back(Json{{"normal", int_vector_json(h.normal)}, {"constant", integer_to_json(h.constant)}});
  }
  return Json{{"dim", a.dim()}, {"domain", to_string(a.domain())}, {"planes", std::move(planes)}};
}

Arrangement arrangement_from_json(const Json& j) {
  return wrap([&] {
    const std::size_t dim = size_from_json(field(j, "dim"), "dim");
    Arrangement a(dim, domain_from_json(field(j, "domain")));
    std::vector<Hyperplane> planes;
    for (const auto& p : array_field(j, "planes")) {
      Hyperplane h = Hyperplane::make(int_vector(field(p, "normal"), dim, "normal"),
                                      integer_from_json(field(p, "constant")));
      if (h.normal != int_vector(field(p, "normal"), dim, "normal")) {
        throw SchemaError("plane is not in canonical form");
      }
      planes.push_back(std::move(h));
    }
    // The coordinate planes must come first, in order.
    for (std::size_t i = 0; i < dim; ++i) {
      if (planes.size() <= i || !(planes[i] == Hyperplane::coordinate(dim, i))) {
        throw SchemaError("arrangement must start with the coordinate planes");
      }
    }
    for (const auto& h : planes) a.add(h);
    if (a.size() != planes.size()) throw SchemaError("duplicate plane");
    return a;
  });
}

Json box_spline_to_json(const BoxSpline& f) {
  Json pieces = Json::array();
  for (const auto& [s, q] : f.pieces) {
    pieces.push_back(Json{{"signs", s.str()}, {"quasipoly", qp_to_json(q)}});
  }
  return Json{{"arrangement", arrangement_to_json(f.arrangement)}, {"pieces", std::move(pieces)}};
}

BoxSpline box_spline_from_json(const Json& j) {
  return wrap([&] {
    BoxSpline f{arrangement_from_json(field(j, "arrangement")), {}};
    for (const auto& p : array_field(j, "pieces")) {
      const Json& s = field(p, "signs");
      if (!s.is_string()) throw SchemaError("signs must be a string");
      SignVector key(s.get<std::string>());
      if (key.size() != f.arrangement.size()) throw SchemaError("sign vector length differs from plane count");
      QuasiPolynomial q = qp_from_json(field(p, "quasipoly"));
      if (q.dim() != f.dim()) throw SchemaError("piece dimension differs from arrangement");
      if (f.pieces.count(key)) throw SchemaError("duplicate region " + key.str());
      if (!q.is_zero()) f.pieces.emplace(std::move(key), std::move(q));
    }
    return f;
  });
}

Json dio_to_json(const DioSystem& s) {
  Json rel = Json::array();
  for (auto r : s.relations) rel.push_back(r == RowRelation::Eq ? "eq" : "le");
  return Json{{"rows", s.rows},
              {"cols", s.cols},
              {"matrix", int_matrix_json(s.matrix)},
              {"offsets", int_vector_json(s.offsets)},
              {"relations", std::move(rel)}};
}

DioSystem dio_from_json(const Json& j) {
  return wrap([&] {
    const std::size_t rows = size_from_json(field(j, "rows"), "rows");
    const std::size_t cols = size_from_json(field(j, "cols"), "cols");
    DioSystem s;
    s.rows = rows;
    s.cols = cols;
    s.matrix = int_matrix(field(j, "matrix"), rows, cols, "matrix");
    s.offsets = j.contains("offsets") ? int_vector(j["offsets"], rows, "offsets") : IntVector(rows, Integer(0));
    s.relations.assign(rows, RowRelation::Eq);
    if (j.contains("relations")) {
      const Json& rel = j["relations"];
      if (!rel.is_array() || rel.size() != rows) throw SchemaError("relations must list one entry per row");
      for (std::size_t i = 0; i < rows; ++i) {
        if (rel[i] == "eq") {
          s.relations[i] = RowRelation::Eq;
        } else if (rel[i] == "le") {
          s.relations[i] = RowRelation::Le;
        } else {
          throw SchemaError("relations must be \"eq\" or \"le\"");
        }
      }
    }
    if (rows == 0) throw SchemaError("system needs at least one row");
    return s;
  });
}

Json semisimple_to_json(const SemiSimpleSet& x) {
  Json pieces = Json::array();
  for (const auto& p : x.pieces) {
    Json e{{"offset", int_vector_json(p.offset)}, {"generators", int_matrix_json(p.generators)}};
    if (p.coefficients == Domain::Integer) e["coefficients"] = "Z";
    pieces.push_back(std::move(e));
  }
  return Json{{"dim", x.dim}, {"lattice", to_string(x.lattice)}, {"pieces", std::move(pieces)}};
}

SemiSimpleSet semisimple_from_json(const Json& j) {
  return wrap([&] {
    SemiSimpleSet x;
    x.dim = size_from_json(field(j, "dim"), "dim");
    x.lattice = domain_from_json(field(j, "lattice"));
    for (const auto& p : array_field(j, "pieces")) {
      SimpleSet s;
      s.dim = x.dim;
      s.lattice = x.lattice;
      s.offset = int_vector(field(p, "offset"), x.dim, "offset");
      const Json& gens = array_field(p, "generators");
      for (const auto& g : gens) s.generators.push_back(int_vector(g, x.dim, "generator"));
      if (p.contains("coefficients")) s.coefficients = domain_from_json(p["coefficients"]);
      x.pieces.push_back(std::move(s));
    }
    return x;
  });
}

Json dm_to_json(const DMInstance& d) {
  return Json{{"t", d.t}, {"n", d.n}, {"matrix", int_matrix_json(d.matrix)}};
}

DMInstance dm_from_json(const Json& j) {
  return wrap([&] {
    const std::size_t t = size_from_json(field(j, "t"), "t");
    const std::size_t n = size_from_json(field(j, "n"), "n");
    if (t == 0) throw SchemaError("t must be positive");
    return DMInstance::make(int_matrix(field(j, "matrix"), t, n, "matrix"), n);
  });
}

Json problem_to_json(const Problem& p) {
  Json payload;
  if (const auto* s = std::get_if<DioSystem>(&p)) {
    payload = dio_to_json(*s);
  } else if (const auto* g = std::get_if<GrowthProblem>(&p)) {
    payload = Json{{"set", semisimple_to_json(g->set)}, {"spec", Json{{"t1", g->spec.t1}, {"t2", g->spec.t2}}}};
  } else {
    payload = dm_to_json(std::get<DMInstance>(p));
  }
  return Json{{"kind", problem_kind(p)}, {"payload", std::move(payload)}};
}

Problem problem_from_json(const Json& j) {
  return wrap([&]() -> Problem {
    const Json& kind = field(j, "kind");
    const Json& payload = field(j, "payload");
    if (kind == "diophantine") return dio_from_json(payload);
    if (kind == "dm") return dm_from_json(payload);
    if (kind == "growth") {
      GrowthProblem g{semisimple_from_json(field(payload, "set")), {}};
      if (payload.contains("spec")) {
        g.spec.t1 = size_from_json(field(payload["spec"], "t1"), "t1");
        g.spec.t2 = size_from_json(field(payload["spec"], "t2"), "t2");
      } else {
        g.spec = GrowthSpec{0, g.set.dim};
      }
      if (g.spec.t1 + g.spec.t2 != g.set.dim) throw SchemaError("spec t1 + t2 must equal the set dimension");
      return g;
    }
    throw SchemaError("kind must be \"diophantine\", \"growth\" or \"dm\"");
  });
}

Json report_to_json(const DiffReport& r) {
  Json mism = Json::array();
  for (const auto& m : r.mismatches) {
    mism.push_back(Json{{"point", int_vector_json(m.point)},
                        {"symbolic", to_string(m.symbolic)},
                        {"oracle", to_string(m.oracle)}});
  }
  return Json{{"instance", r.instance},
              {"bound", r.bound},
              {"checked_points", r.checked_points},
              {"mismatches", std::move(mism)}};
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

Json parse_json(const std::string& text) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw SchemaError(std::string("malformed JSON: ") + e.what());
  }
}

}  // namespace qps
