#include "qps/oracle.hpp"

#include "qps/error.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <mutex>
#include <sstream>
#include <thread>

namespace qps {

namespace {

constexpr std::int64_t kLimit = std::int64_t{1} << 40;

std::int64_t small(const Integer& v) {
  std::int64_t x = to_int64(v);
  if (x > kLimit || x < -kLimit) throw InternalError("oracle data exceed its 64-bit working range");
  return x;
}

std::vector<std::int64_t> small(std::span<const Integer> v) {
  std::vector<std::int64_t> out;
  out.reserve(v.size());
  for (const auto& x : v) out.push_back(small(x));
  return out;
}

std::vector<std::vector<std::int64_t>> small(const IntMatrix& m) {
  std::vector<std::vector<std::int64_t>> out;
  for (const auto& row : m) out.push_back(small(row));
  return out;
}

// Solutions of sum_j a_ij x_j (= or <=) r_i over x in N^k, x_j bounded
// through the rows with a_ij > 0 (non-negative data).
class NonnegCounter {
 public:
  NonnegCounter(const DioSystem& sys) : a_(small(sys.matrix)), rows_(sys.rows), cols_(sys.cols) {
    for (auto rel : sys.relations) eq_.push_back(rel == RowRelation::Eq);
    for (std::size_t j = 0; j < cols_; ++j) {
      bool any = false;
      for (std::size_t i = 0; i < rows_; ++i) any = any || a_[i][j] > 0;
      if (!any) throw PreconditionError("zero column " + std::to_string(j + 1) + ": the count would be infinite");
    }
  }

  std::int64_t count(std::vector<std::int64_t> r) const {
    for (auto v : r) {
      if (v < 0) return 0;
    }
    return go(0, r);
  }

 private:
  std::int64_t go(std::size_t j, std::vector<std::int64_t>& r) const {
    if (j == cols_) {
      for (std::size_t i = 0; i < rows_; ++i) {
        if (eq_[i] && r[i] != 0) return 0;
      }
      return 1;
    }
    std::int64_t hi = -1;
    for (std::size_t i = 0; i < rows_; ++i) {
      if (a_[i][j] == 0) continue;
      std::int64_t b = r[i] / a_[i][j];
      hi = hi < 0 ? b : std::min(hi, b);
    }
    std::int64_t total = 0;
    for (std::int64_t x = 0; x <= hi; ++x) {
      for (std::size_t i = 0; i < rows_; ++i) r[i] -= a_[i][j] * x;
      total += go(j + 1, r);
      for (std::size_t i = 0; i < rows_; ++i) r[i] += a_[i][j] * x;
    }
    return total;
  }

  std::vector<std::vector<std::int64_t>> a_;
  std::size_t rows_;
  std::size_t cols_;
  std::vector<bool> eq_;
};

class PointedCounter {
 public:
  PointedCounter(const IntMatrix& a, const Rational& h) : a_(small(a)), h_(h) {
    rows_ = a_.size();
    cols_ = rows_ == 0 ? 0 : a_[0].size();
  }

  std::int64_t count(std::span<const Integer> b) const {
    std::vector<std::int64_t> r = small(b);
    std::int64_t m = 0;
    for (auto v : r) m = std::max(m, v < 0 ? -v : v);
    const std::int64_t top = to_int64(floor(h_ * m));
    if (cols_ == 0) {
      return std::all_of(r.begin(), r.end(), [](std::int64_t v) { return v == 0; }) ? 1 : 0;
    }
    return go(0, r, top);
  }

 private:
  std::int64_t go(std::size_t j, std::vector<std::int64_t>& r, std::int64_t top) const {
    if (j + 1 == cols_) {
      // The last unknown is forced by any row where it appears.
      std::int64_t x = -1;
      for (std::size_t i = 0; i < rows_; ++i) {
        if (a_[i][j] == 0) continue;
        if (r[i] % a_[i][j] != 0) return 0;
        x = r[i] / a_[i][j];
        break;
      }
      if (x < 0) {
        // Column of zeros cannot occur in a pointed matrix.
        return 0;
      }
      if (x > top) return 0;
      for (std::size_t i = 0; i < rows_; ++i) {
        if (a_[i][j] * x != r[i]) return 0;
      }
      return 1;
    }
    std::int64_t total = 0;
    for (std::int64_t x = 0; x <= top; ++x) {
      for (std::size_t i = 0; i < rows_; ++i) r[i] -= a_[i][j] * x;
      total += go(j + 1, r, top);
      for (std::size_t i = 0; i < rows_; ++i) r[i] += a_[i][j] * x;
    }
    return total;
  }

  std::vector<std::vector<std::int64_t>> a_;
  Rational h_;
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
};

// Membership of every lattice point of [-B, B]^t in the set, computed once;
// the number of pieces holding each point is stored.
class GrowthCounter {
 public:
  GrowthCounter(const SemiSimpleSet& x, GrowthSpec spec, std::int64_t bound)
      : spec_(spec), dim_(x.dim), bound_(bound), side_(2 * bound + 1) {
    std::int64_t cells = 1;
    for (std::size_t i = 0; i < dim_; ++i) cells *= side_;
    hits_.assign(static_cast<std::size_t>(cells), 0);
    IntVector p(dim_);
    for (std::int64_t c = 0; c < cells; ++c) {
      std::int64_t rest = c;
      for (std::size_t i = 0; i < dim_; ++i) {
        p[i] = rest % side_ - bound_;
        rest /= side_;
      }
      if (x.lattice == Domain::Natural && std::any_of(p.begin(), p.end(), [](const Integer& v) { return v < 0; })) {
        continue;
      }
      for (const auto& piece : x.pieces) hits_[static_cast<std::size_t>(c)] += membership(piece, p) ? 1 : 0;
    }
  }

  std::int64_t count(std::span<const Integer> eta) const {
    std::vector<std::int64_t> e = small(eta);
    for (auto v : e) {
      if (v < 0 || v > bound_) throw InternalError("growth oracle point outside its table");
    }
    std::vector<std::int64_t> p(dim_);
    return go(0, e, p);
  }

 private:
  std::int64_t go(std::size_t i, const std::vector<std::int64_t>& e, std::vector<std::int64_t>& p) const {
    if (i == dim_) {
      std::int64_t c = 0;
      for (std::size_t k = dim_; k-- > 0;) c = c * side_ + (p[k] + bound_);
      int h = hits_[static_cast<std::size_t>(c)];
      if (h >= 2) {
        std::ostringstream msg;
        msg << "pieces are not disjoint: point (";
        for (std::size_t k = 0; k < dim_; ++k) msg << (k ? ", " : "") << p[k];
        msg << ") lies in " << h << " pieces";
        throw PreconditionError(msg.str());
      }
      return h;
    }
    std::int64_t total = 0;
    auto visit = [&](std::int64_t v) {
      p[i] = v;
      total += go(i + 1, e, p);
    };
    if (i < spec_.t1) {
      visit(e[i]);
      if (e[i] != 0) visit(-e[i]);
    } else {
      for (std::int64_t v = -e[i]; v <= e[i]; ++v) visit(v);
    }
    return total;
  }

  GrowthSpec spec_;
  std::size_t dim_;
  std::int64_t bound_;
  std::int64_t side_;
  std::vector<int> hits_;
};

}  // namespace

Integer oracle_count_nonneg(const DioSystem& sys, std::span<const Integer> n) {
  sys.validate();
  if (n.size() != sys.rows) throw DimensionMismatch("point dimension differs from system rows");
  NonnegCounter counter(sys);
  std::vector<std::int64_t> r(sys.rows);
  for (std::size_t i = 0; i < sys.rows; ++i) r[i] = small(n[i]) - small(sys.offsets[i]);
  return Integer(static_cast<long>(counter.count(std::move(r))));
}

Integer oracle_count_pointed(const IntMatrix& a, std::span<const Integer> b, const Rational& h) {
  if (b.size() != a.size()) throw DimensionMismatch("point dimension differs from matrix rows");
  return Integer(static_cast<long>(PointedCounter(a, h).count(b)));
}

Integer oracle_growth(const SemiSimpleSet& x, GrowthSpec spec, std::span<const Integer> eta) {
  if (eta.size() != x.dim || spec.t1 + spec.t2 != x.dim) throw DimensionMismatch("growth point or spec mismatch");
  std::int64_t bound = 0;
  for (const auto& v : eta) {
    if (v < 0) throw DomainError("growth arguments must be non-negative");
    bound = std::max(bound, small(v));
  }
  return Integer(static_cast<long>(GrowthCounter(x, spec, bound).count(eta)));
}

std::string problem_kind(const Problem& p) {
  switch (p.index()) {
    case 0: return "diophantine";
    case 1: return "growth";
    default: return "dm";
  }
}

namespace {

std::string matrix_text(const IntMatrix& m) {
  std::ostringstream out;
  out << "[";
  for (std::size_t i = 0; i < m.size(); ++i) {
    out << (i ? ", " : "") << "[";
    for (std::size_t j = 0; j < m[i].size(); ++j) out << (j ? ", " : "") << m[i][j];
    out << "]";
  }
  out << "]";
  return out.str();
}

std::string vector_text(const IntVector& v) {
  std::ostringstream out;
  out << "(";
  for (std::size_t i = 0; i < v.size(); ++i) out << (i ? ", " : "") << v[i];
  out << ")";
  return out.str();
}

}  // namespace

std::string describe(const Problem& p) {
  std::ostringstream out;
  if (const auto* s = std::get_if<DioSystem>(&p)) {
    out << "diophantine " << s->rows << "x" << s->cols << " matrix " << matrix_text(s->matrix) << " offsets "
        << vector_text(s->offsets);
  } else if (const auto* g = std::get_if<GrowthProblem>(&p)) {
    out << "growth of " << g->set.pieces.size() << " piece(s) in " << to_string(g->set.lattice) << "^" << g->set.dim
        << ", t1=" << g->spec.t1 << " t2=" << g->spec.t2;
  } else {
    out << "dm matrix " << matrix_text(std::get<DMInstance>(p).matrix);
  }
  return out.str();
}

BoxSpline construct(const Problem& p) {
  if (const auto* s = std::get_if<DioSystem>(&p)) return count_system(slackify(*s));
  if (const auto* g = std::get_if<GrowthProblem>(&p)) return growth(g->set, g->spec);
  return build_CA(std::get<DMInstance>(p));
}

DiffReport diff_test(const Problem& p, const BoxSpline& symbolic, std::int64_t bound, unsigned jobs) {
  if (bound < 0) throw PreconditionError("grid bound must be non-negative");
  DiffReport report;
  report.instance = describe(p);
  report.bound = bound;

  std::function<Integer(std::span<const Integer>)> oracle;
  std::size_t dim = 0;
  std::int64_t lo = 0;
  std::optional<NonnegCounter> nonneg;
  std::optional<PointedCounter> pointed;
  std::optional<GrowthCounter> grower;
  IntVector offsets;
  if (const auto* s = std::get_if<DioSystem>(&p)) {
    nonneg.emplace(*s);
    dim = s->rows;
    offsets = s->offsets;
    oracle = [&](std::span<const Integer> n) {
      std::vector<std::int64_t> r(n.size());
      for (std::size_t i = 0; i < n.size(); ++i) r[i] = small(n[i]) - small(offsets[i]);
      return Integer(static_cast<long>(nonneg->count(std::move(r))));
    };
  } else if (const auto* g = std::get_if<GrowthProblem>(&p)) {
    dim = g->set.dim;
    grower.emplace(g->set, g->spec, bound);
    oracle = [&](std::span<const Integer> eta) { return Integer(static_cast<long>(grower->count(eta))); };
  } else {
    const auto& inst = std::get<DMInstance>(p);
    require_pointed(inst);
    dim = inst.t;
    lo = -bound;
    pointed.emplace(inst.matrix, inst.h);
    oracle = [&](std::span<const Integer> b) { return Integer(static_cast<long>(pointed->count(b))); };
  }
  if (symbolic.dim() != dim) throw DimensionMismatch("box spline dimension differs from the problem");

  const std::int64_t side = bound - lo + 1;
  std::int64_t cells = 1;
  for (std::size_t i = 0; i < dim; ++i) cells *= side;

  jobs = std::max(1u, jobs);
  std::vector<std::vector<Mismatch>> found(jobs);
  std::mutex error_mutex;
  std::exception_ptr error;
  auto work = [&](unsigned w) {
    try {
      IntVector x(dim);
      for (std::int64_t c = w; c < cells; c += jobs) {
        std::int64_t rest = c;
        for (std::size_t i = 0; i < dim; ++i) {
          x[i] = rest % side + lo;
          rest /= side;
        }
        Rational sym = bs_eval(symbolic, x);
        Rational ora(oracle(x));
        if (sym != ora) found[w].push_back(Mismatch{x, std::move(sym), std::move(ora)});
      }
    } catch (...) {
      std::lock_guard<std::mutex> lock(error_mutex);
      if (!error) error = std::current_exception();
    }
  };
  if (jobs == 1) {
    work(0);
  } else {
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < jobs; ++w) pool.emplace_back(work, w);
    for (auto& th : pool) th.join();
  }
  if (error) std::rethrow_exception(error);
  for (auto& f : found) {
    for (auto& m : f) report.mismatches.push_back(std::move(m));
  }
  std::sort(report.mismatches.begin(), report.mismatches.end(),
            [](const Mismatch& a, const Mismatch& b) { return a.point < b.point; });
  report.checked_points = static_cast<std::uint64_t>(cells);
  return report;
}

DiffReport diff_test(const Problem& p, std::int64_t bound, unsigned jobs) {
  return diff_test(p, construct(p), bound, jobs);
}

}  // namespace qps
