#include "qps/multipoly.hpp"

#include "qps/error.hpp"

#include <algorithm>
#include <deque>
#include <mutex>
#include <sstream>

namespace qps {

MultiPoly MultiPoly::constant(std::size_t nvars, const Rational& c) {
  MultiPoly p(nvars);
  p.add_term(Exponents(nvars, 0), c);
  return p;
}

MultiPoly MultiPoly::variable(std::size_t nvars, std::size_t index) {
  if (index >= nvars) throw DimensionMismatch("variable index out of range");
  Exponents e(nvars, 0);
  e[index] = 1;
  return monomial(nvars, std::move(e), Rational(1));
}

MultiPoly MultiPoly::monomial(std::size_t nvars, Exponents exps, const Rational& c) {
  MultiPoly p(nvars);
  p.add_term(exps, c);
  return p;
}

bool MultiPoly::is_constant() const {
  return terms_.empty() ||
         (terms_.size() == 1 && terms_.begin()->first == Exponents(nvars_, 0));
}

Rational MultiPoly::constant_term() const {
  auto it = terms_.find(Exponents(nvars_, 0));
  return it == terms_.end() ? Rational(0) : it->second;
}

unsigned MultiPoly::degree() const {
  unsigned d = 0;
  for (const auto& [e, c] : terms_) {
    unsigned s = 0;
    for (unsigned v : e) s += v;
    d = std::max(d, s);
  }
  return d;
}

unsigned MultiPoly::degree_in(std::size_t var) const {
  unsigned d = 0;
  for (const auto& [e, c] : terms_) d = std::max(d, e[var]);
  return d;
}

void MultiPoly::add_term(const Exponents& exps, const Rational& c) {
  if (exps.size() != nvars_) throw DimensionMismatch("exponent vector length differs from variable count");
  if (c == 0) return;
  auto [it, inserted] = terms_.try_emplace(exps, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

Rational MultiPoly::eval(std::span<const Rational> x) const {
  if (x.size() != nvars_) throw DimensionMismatch("evaluation point has wrong dimension");
  Rational sum = 0;
  Rational term;
  Rational power;
  for (const auto& [e, c] : terms_) {
    term = c;
    for (std::size_t i = 0; i < nvars_; ++i) {
      if (e[i] == 0) continue;
      mpz_pow_ui(power.get_num_mpz_t(), x[i].get_num_mpz_t(), e[i]);
      mpz_pow_ui(power.get_den_mpz_t(), x[i].get_den_mpz_t(), e[i]);
      term *= power;
    }
    sum += term;
  }
  return sum;
}

Rational MultiPoly::eval(std::span<const Integer> x) const {
  if (x.size() != nvars_) throw DimensionMismatch("evaluation point has wrong dimension");
  Rational sum = 0;
  Integer power;
  for (const auto& [e, c] : terms_) {
    Integer prod = 1;
    for (std::size_t i = 0; i < nvars_; ++i) {
      if (e[i] == 0) continue;
      mpz_pow_ui(power.get_mpz_t(), x[i].get_mpz_t(), e[i]);
      prod *= power;
    }
    sum += c * prod;
  }
  return sum;
}

MultiPoly MultiPoly::compose(std::span<const MultiPoly> images) const {
  if (images.size() != nvars_) throw DimensionMismatch("compose needs one image per variable");
  const std::size_t m = images.empty() ? 0 : images[0].nvars();
  for (const auto& img : images) {
    if (img.nvars() != m) throw DimensionMismatch("compose images disagree on variable count");
  }
  // powers[i][k] = images[i]^k
  std::vector<std::vector<MultiPoly>> powers(nvars_);
  for (std::size_t i = 0; i < nvars_; ++i) {
    unsigned d = degree_in(i);
    powers[i].reserve(d + 1);
    powers[i].push_back(constant(m, 1));
    for (unsigned k = 1; k <= d; ++k) powers[i].push_back(powers[i].back() * images[i]);
  }
  MultiPoly out(m);
  for (const auto& [e, c] : terms_) {
    MultiPoly term = constant(m, c);
    for (std::size_t i = 0; i < nvars_; ++i) {
      if (e[i] != 0) term = term * powers[i][e[i]];
    }
    out += term;
  }
  return out;
}

MultiPoly MultiPoly::extended(std::size_t count) const {
  MultiPoly out(nvars_ + count);
  for (const auto& [e, c] : terms_) {
    Exponents ne = e;
    ne.resize(nvars_ + count, 0);
    out.terms_.emplace(std::move(ne), c);
  }
  return out;
}

void MultiPoly::check_same(const MultiPoly& other) const {
  if (nvars_ != other.nvars_) throw DimensionMismatch("polynomials over different variable counts");
}

MultiPoly& MultiPoly::operator+=(const MultiPoly& other) {
  check_same(other);
  for (const auto& [e, c] : other.terms_) add_term(e, c);
  return *this;
}

MultiPoly& MultiPoly::operator-=(const MultiPoly& other) {
  check_same(other);
  for (const auto& [e, c] : other.terms_) add_term(e, -c);
  return *this;
}

MultiPoly& MultiPoly::operator*=(const Rational& c) {
  if (c == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& [e, v] : terms_) v *= c;
  return *this;
}

MultiPoly MultiPoly::operator-() const {
  MultiPoly out = *this;
  for (auto& [e, v] : out.terms_) v = -v;
  return out;
}

MultiPoly operator*(const MultiPoly& a, const MultiPoly& b) {
  a.check_same(b);
  MultiPoly out(a.nvars_);
  MultiPoly::Exponents e(a.nvars_);
  for (const auto& [ea, ca] : a.terms_) {
    for (const auto& [eb, cb] : b.terms_) {
      for (std::size_t i = 0; i < e.size(); ++i) e[i] = ea[i] + eb[i];
      out.add_term(e, ca * cb);
    }
  }
  return out;
}

std::string MultiPoly::to_string(std::span<const std::string> names) const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  // Highest total degree first reads more naturally.
  std::vector<std::pair<const Exponents*, const Rational*>> order;
  for (const auto& [e, c] : terms_) order.emplace_back(&e, &c);
  std::stable_sort(order.begin(), order.end(), [](const auto& l, const auto& r) {
    unsigned dl = 0, dr = 0;
    for (unsigned v : *l.first) dl += v;
    for (unsigned v : *r.first) dr += v;
    if (dl != dr) return dl > dr;
    return *l.first > *r.first;
  });
  for (const auto& [ep, cp] : order) {
    const Exponents& e = *ep;
    Rational c = *cp;
    bool neg = c < 0;
    if (neg) c = -c;
    if (first) {
      if (neg) os << "-";
    } else {
      os << (neg ? " - " : " + ");
    }
    first = false;
    bool is_const = true;
    for (unsigned v : e) is_const = is_const && v == 0;
    std::string coeff = c.get_den() == 1 ? c.get_num().get_str() : c.get_str();
    if (is_const) {
      os << coeff;
      continue;
    }
    bool need_star = false;
    if (c != 1) {
      os << coeff;
      need_star = true;
    }
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (e[i] == 0) continue;
      if (need_star) os << "*";
      if (i < names.size()) {
        os << names[i];
      } else {
        os << "x" << (i + 1);
      }
      if (e[i] > 1) os << "^" << e[i];
      need_star = true;
    }
  }
  return os.str();
}

MultiPoly pow(const MultiPoly& p, unsigned e) {
  MultiPoly out = MultiPoly::constant(p.nvars(), 1);
  for (unsigned k = 0; k < e; ++k) out = out * p;
  return out;
}

namespace {

std::deque<MultiPoly>& faulhaber_cache() {
  static std::deque<MultiPoly> cache;
  return cache;
}

Integer binomial(unsigned n, unsigned k) {
  Integer r;
  mpz_bin_uiui(r.get_mpz_t(), n, k);
  return r;
}

}  // namespace

const MultiPoly& faulhaber(unsigned j) {
  static std::mutex mu;
  std::lock_guard lock(mu);
  auto& cache = faulhaber_cache();
  // (x+1)^{j+1} = sum_{i=0..j} C(j+1, i) p_i(x), by telescoping
  // sum_{l=0..x} ((l+1)^{j+1} - l^{j+1}).
  const MultiPoly x_plus_1 = MultiPoly::variable(1, 0) + MultiPoly::constant(1, 1);
  while (cache.size() <= j) {
    unsigned n = static_cast<unsigned>(cache.size());
    MultiPoly acc = pow(x_plus_1, n + 1);
    for (unsigned i = 0; i < n; ++i) acc -= cache[i] * Rational(binomial(n + 1, i));
    acc *= Rational(1, n + 1);
    cache.push_back(std::move(acc));
  }
  return cache[j];
}

MultiPoly sum_over_index(const MultiPoly& q, std::size_t index) {
  if (index >= q.nvars()) throw DimensionMismatch("summation variable not found");
  const std::size_t n = q.nvars();
  // q = sum_j a_j(others) * l^j; replace l^j by p_j(x) in the same slot.
  MultiPoly out(n);
  std::map<unsigned, MultiPoly> lifted;
  for (const auto& [e, c] : q.terms()) {
    unsigned j = e[index];
    auto it = lifted.find(j);
    if (it == lifted.end()) {
      const MultiPoly& f = faulhaber(j);
      MultiPoly g(n);
      for (const auto& [fe, fc] : f.terms()) {
        MultiPoly::Exponents ge(n, 0);
        ge[index] = fe[0];
        g.add_term(ge, fc);
      }
      it = lifted.emplace(j, std::move(g)).first;
    }
    MultiPoly::Exponents rest = e;
    rest[index] = 0;
    out += MultiPoly::monomial(n, std::move(rest), c) * it->second;
  }
  return out;
}

}  // namespace qps
