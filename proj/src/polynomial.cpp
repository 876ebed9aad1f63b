#include "polact/polynomial.hpp"

#include <algorithm>
#include <optional>

#include "polact/error.hpp"

namespace polact {

Polynomial::Polynomial(std::vector<Rational> coeffs) : c_(std::move(coeffs)) { trim(); }

void Polynomial::trim() {
  while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

Rational Polynomial::operator()(const Rational& x) const {
  Rational acc = 0;
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + *it;
  return acc;
}

double Polynomial::eval(double x) const {
  double acc = 0;
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + it->get_d();
  return acc;
}

Polynomial Polynomial::derivative() const {
  std::vector<Rational> d;
  for (size_t k = 1; k < c_.size(); ++k) d.push_back(c_[k] * static_cast<long>(k));
  return Polynomial(std::move(d));
}

Polynomial Polynomial::antiderivative() const {
  std::vector<Rational> d{0};
  for (size_t k = 0; k < c_.size(); ++k) d.push_back(c_[k] / static_cast<long>(k + 1));
  return Polynomial(std::move(d));
}

Rational Polynomial::integrate(const Rational& a, const Rational& b) const {
  auto F = antiderivative();
  return F(b) - F(a);
}

Polynomial Polynomial::shifted(const Rational& c) const {
  // Horner with polynomial accumulator: acc = acc * (x + c) + c_k.
  Polynomial acc;
  Polynomial xc = linear(c, 1);
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * xc + constant(*it);
  return acc;
}

Enclosure Polynomial::range(const Rational& a, const Rational& b) const {
  if (degree() <= 0) return Enclosure::exact(coeff(0));
  if (degree() == 1) {
    Rational pa = (*this)(a), pb = (*this)(b);
    return {std::min(pa, pb), std::max(pa, pb)};
  }
  Rational mid = (a + b) / 2, h = (b - a) / 2;
  auto q = shifted(mid);
  Rational spread = 0, hk = 1;
  for (size_t k = 1; k < q.c_.size(); ++k) {
    hk *= h;
    spread += abs(q.c_[k]) * hk;
  }
  return {q.coeff(0) - spread, q.coeff(0) + spread};
}

std::pair<Polynomial, Polynomial> Polynomial::divmod(const Polynomial& d) const {
  require(!d.is_zero(), ErrorCode::Domain, "polynomial division by zero");
  std::vector<Rational> r = c_;
  std::vector<Rational> quot(c_.size() >= d.c_.size() ? c_.size() - d.c_.size() + 1 : 0);
  const Rational& lead = d.c_.back();
  for (size_t i = quot.size(); i-- > 0;) {
    Rational f = r[i + d.c_.size() - 1] / lead;
    quot[i] = f;
    for (size_t k = 0; k < d.c_.size(); ++k) r[i + k] -= f * d.c_[k];
  }
  return {Polynomial(std::move(quot)), Polynomial(std::move(r))};
}

namespace {

std::vector<Polynomial> sturm_chain(const Polynomial& p) {
  std::vector<Polynomial> chain{p, p.derivative()};
  while (!chain.back().is_zero()) {
    auto rem = chain[chain.size() - 2].divmod(chain.back()).second;
    chain.push_back(-rem);
  }
  chain.pop_back();
  return chain;
}

int sign_changes(const std::vector<Polynomial>& chain, const Rational& x) {
  int changes = 0, last = 0;
  for (const auto& q : chain) {
    int s = sgn(q(x));
    if (s == 0) continue;
    if (last != 0 && s != last) ++changes;
    last = s;
  }
  return changes;
}

}  // namespace

int Polynomial::count_roots(const Rational& a, const Rational& b) const {
  require(!is_zero(), ErrorCode::Domain, "root count of the zero polynomial");
  if (degree() == 0) return 0;
  auto chain = sturm_chain(*this);
  return sign_changes(chain, a) - sign_changes(chain, b);
}

bool Polynomial::positive_on(const Rational& a, const Rational& b) const {
  if (is_zero()) return false;
  if ((*this)(a) <= 0 || (*this)(b) <= 0) return false;
  return count_roots(a, b) == 0;
}

Polynomial operator+(const Polynomial& a, const Polynomial& b) {
  std::vector<Rational> c(std::max(a.c_.size(), b.c_.size()));
  for (size_t k = 0; k < c.size(); ++k) c[k] = a.coeff(k) + b.coeff(k);
  return Polynomial(std::move(c));
}

Polynomial operator-(const Polynomial& a) {
  std::vector<Rational> c = a.c_;
  for (auto& x : c) x = -x;
  return Polynomial(std::move(c));
}

Polynomial operator-(const Polynomial& a, const Polynomial& b) { return a + (-b); }

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
  if (a.is_zero() || b.is_zero()) return {};
  std::vector<Rational> c(a.c_.size() + b.c_.size() - 1);
  for (size_t i = 0; i < a.c_.size(); ++i)
    for (size_t j = 0; j < b.c_.size(); ++j) c[i + j] += a.c_[i] * b.c_[j];
  return Polynomial(std::move(c));
}

std::string Polynomial::to_string() const {
  if (c_.empty()) return "0";
  std::string out;
  for (size_t k = c_.size(); k-- > 0;) {
    const Rational& c = c_[k];
    if (c == 0) continue;
    Rational m = abs(c);
    if (out.empty()) {
      if (c < 0) out += "-";
    } else {
      out += c < 0 ? " - " : " + ";
    }
    bool unit = m == 1 && k > 0;
    if (!unit) out += polact::to_string(m);
    if (k > 0) out += unit ? "x" : "*x";
    if (k > 1) out += "^" + std::to_string(k);
  }
  return out;
}

namespace {

// Upper bound of A/B on [l, h], or nullopt when B's enclosure is not positive.
std::optional<Rational> ratio_upper(const Polynomial& A, const Polynomial& B, const Rational& l, const Rational& h) {
  Enclosure ea = A.range(l, h), eb = B.range(l, h);
  if (eb.lo <= 0) return std::nullopt;
  return ea.hi >= 0 ? ea.hi / eb.lo : ea.hi / eb.hi;
}

}  // namespace

Enclosure sup_ratio(const Polynomial& A, const Polynomial& B, const Rational& a, const Rational& b,
                    const Rational& tol, long& budget) {
  auto value = [&](const Rational& x) -> Rational { return A(x) / B(x); };
  Rational lower = std::max(value(a), value(b));
  Rational upper = lower;
  Polynomial crit = A.derivative() * B - A * B.derivative();
  if (crit.is_zero() || a == b) return {lower, upper};

  auto chain = sturm_chain(crit);
  struct Piece {
    Rational l, h;
    int vl, vh;
  };
  std::vector<Piece> stack{{a, b, sign_changes(chain, a), sign_changes(chain, b)}};
  while (!stack.empty()) {
    Piece p = stack.back();
    stack.pop_back();
    int roots = p.vl - p.vh;
    if (roots <= 0) continue;
    if (roots == 1) {
      Rational lo_val = std::max(value(p.l), value(p.h));
      lower = std::max(lower, lo_val);
      auto up = ratio_upper(A, B, p.l, p.h);
      if (up && *up <= lower) continue;  // cannot beat what we already have
      if (up && *up - lo_val <= tol) {
        upper = std::max(upper, *up);
        continue;
      }
    }
    require(--budget > 0, ErrorCode::Undecided, "sup enclosure did not converge within the subdivision budget");
    Rational mid = (p.l + p.h) / 2;
    // Keep midpoints off the roots of crit so counts stay well defined.
    Rational nudge = (p.h - p.l) / 1024;
    while (crit(mid) == 0) mid += nudge;
    int vm = sign_changes(chain, mid);
    stack.push_back({p.l, mid, p.vl, vm});
    stack.push_back({mid, p.h, vm, p.vh});
  }
  return {lower, std::max(upper, lower)};
}

}  // namespace polact
