#include "logcurve/polynomial.hpp"

#include <algorithm>

namespace logcurve {

QPoly operator+(const QPoly& a, const QPoly& b) {
  std::vector<Rat> c(std::max(a.c.size(), b.c.size()), Rat(0));
  for (std::size_t i = 0; i < a.c.size(); ++i) c[i] += a.c[i];
  for (std::size_t i = 0; i < b.c.size(); ++i) c[i] += b.c[i];
  return QPoly(std::move(c));
}

QPoly operator-(const QPoly& a, const QPoly& b) {
  std::vector<Rat> c(std::max(a.c.size(), b.c.size()), Rat(0));
  for (std::size_t i = 0; i < a.c.size(); ++i) c[i] += a.c[i];
  for (std::size_t i = 0; i < b.c.size(); ++i) c[i] -= b.c[i];
  return QPoly(std::move(c));
}

QPoly operator*(const QPoly& a, const QPoly& b) {
  if (a.is_zero() || b.is_zero()) return QPoly();
  std::vector<Rat> c(a.c.size() + b.c.size() - 1, Rat(0));
  for (std::size_t i = 0; i < a.c.size(); ++i) {
    if (a.c[i] == 0) continue;
    for (std::size_t j = 0; j < b.c.size(); ++j) c[i + j] += a.c[i] * b.c[j];
  }
  return QPoly(std::move(c));
}

QPoly operator*(const QPoly& a, const Rat& s) {
  std::vector<Rat> c(a.c.size());
  for (std::size_t i = 0; i < a.c.size(); ++i) c[i] = a.c[i] * s;
  return QPoly(std::move(c));
}

std::pair<QPoly, QPoly> divmod(const QPoly& a, const QPoly& b) {
  if (b.is_zero()) throw internal_error("polynomial division by zero");
  QPoly r = a;
  if (a.degree() < b.degree()) return {QPoly(), r};
  std::vector<Rat> q(a.degree() - b.degree() + 1, Rat(0));
  Rat inv = Rat(1) / b.lead();
  while (!r.is_zero() && r.degree() >= b.degree()) {
    long shift = r.degree() - b.degree();
    Rat f = r.lead() * inv;
    q[shift] = f;
    for (long i = 0; i <= b.degree(); ++i) r.c[shift + i] -= f * b.c[i];
    r.trim();
  }
  return {QPoly(std::move(q)), r};
}

QPoly poly_gcd(const QPoly& a, const QPoly& b) {
  QPoly x = a, y = b;
  while (!y.is_zero()) {
    QPoly r = divmod(x, y).second;
    x = y;
    y = r;
  }
  return x.is_zero() ? x : monic(x);
}

QPoly derivative(const QPoly& a) {
  if (a.c.size() <= 1) return QPoly();
  std::vector<Rat> c(a.c.size() - 1);
  for (std::size_t i = 1; i < a.c.size(); ++i) c[i - 1] = a.c[i] * Rat(static_cast<long>(i));
  return QPoly(std::move(c));
}

QPoly monic(const QPoly& a) {
  if (a.is_zero()) return a;
  return a * (Rat(1) / a.lead());
}

Rat eval(const QPoly& a, const Rat& x) {
  Rat v(0);
  for (auto it = a.c.rbegin(); it != a.c.rend(); ++it) v = v * x + *it;
  return v;
}

std::complex<double> eval(const QPoly& a, const std::complex<double>& x) {
  std::complex<double> v(0.0, 0.0);
  for (auto it = a.c.rbegin(); it != a.c.rend(); ++it) v = v * x + to_double(*it);
  return v;
}

long root_multiplicity(const QPoly& a, const Rat& root) {
  if (a.is_zero()) throw internal_error("root_multiplicity of zero polynomial");
  QPoly lin({-root, Rat(1)});
  QPoly cur = a;
  long k = 0;
  for (;;) {
    auto [q, r] = divmod(cur, lin);
    if (!r.is_zero()) return k;
    cur = q;
    ++k;
  }
}

std::vector<std::pair<QPoly, long>> squarefree_decomposition(const QPoly& a) {
  std::vector<std::pair<QPoly, long>> out;
  if (a.is_zero() || a.degree() == 0) return out;
  // Yun's algorithm; valid in characteristic zero.
  QPoly p = monic(a);
  QPoly g = poly_gcd(p, derivative(p));
  QPoly w = divmod(p, g).first;   // product of distinct factors
  QPoly y = divmod(derivative(p), g).first;
  long k = 1;
  while (w.degree() > 0) {
    QPoly z = y - derivative(w);
    QPoly f = poly_gcd(w, z);
    if (f.degree() > 0) out.emplace_back(f, k);
    w = divmod(w, f).first;
    y = divmod(z, f).first;
    ++k;
  }
  return out;
}

QPoly squarefree_part(const QPoly& a) {
  QPoly out = QPoly::constant(Rat(1));
  for (const auto& [f, k] : squarefree_decomposition(a)) out = out * f;
  return out;
}

QPoly reverse_poly(const QPoly& a, long deg) {
  if (a.degree() > deg) throw internal_error("reverse_poly: degree too small");
  std::vector<Rat> c(deg + 1, Rat(0));
  for (std::size_t i = 0; i < a.c.size(); ++i) c[deg - static_cast<long>(i)] = a.c[i];
  return QPoly(std::move(c));
}

std::string poly_str(const QPoly& a, const std::string& var) {
  if (a.is_zero()) return "0";
  std::string out;
  for (long i = 0; i <= a.degree(); ++i) {
    if (a.c[i] == 0) continue;
    std::string term;
    if (i == 0) {
      term = rat_str(a.c[i]);
    } else {
      if (a.c[i] == 1) term = "";
      else if (a.c[i] == -1) term = "-";
      else term = rat_str(a.c[i]) + "*";
      term += var;
      if (i > 1) term += "^" + std::to_string(i);
    }
    if (out.empty()) {
      out = term;
    } else if (!term.empty() && term[0] == '-') {
      out += " - " + term.substr(1);
    } else {
      out += " + " + term;
    }
  }
  return out;
}

}  // namespace logcurve
