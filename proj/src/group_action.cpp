#include "bicomb/group_action.hpp"

#include <cmath>
#include <stdexcept>

namespace bicomb {

Point GroupAction::apply_word(const Word& w, Point p) const {
  for (auto it = w.rbegin(); it != w.rend(); ++it) p = apply(*it, p);
  return p;
}

Word GroupAction::inverse_word(const Word& w) const {
  Word inv;
  inv.reserve(w.size());
  for (auto it = w.rbegin(); it != w.rend(); ++it)
    inv.push_back(inverse_label(*it));
  return inv;
}

TranslationAction::TranslationAction()
    : GroupAction("integer-translations", {"e", "x", "x^-1", "y", "y^-1"}) {}

void TranslationAction::step_of(const std::string& label, long long* dx,
                                long long* dy) const {
  *dx = 0;
  *dy = 0;
  if (label == "e") return;
  if (label == "x") *dx = 1;
  else if (label == "x^-1") *dx = -1;
  else if (label == "y") *dy = 1;
  else if (label == "y^-1") *dy = -1;
  else throw std::invalid_argument("unknown translation label: " + label);
}

std::string TranslationAction::inverse_label(const std::string& label) const {
  if (label == "e") return "e";
  if (label == "x") return "x^-1";
  if (label == "x^-1") return "x";
  if (label == "y") return "y^-1";
  if (label == "y^-1") return "y";
  throw std::invalid_argument("unknown translation label: " + label);
}

Point TranslationAction::apply(const std::string& label, const Point& p) const {
  if (p.size() != 2)
    throw std::invalid_argument("translation action expects planar points");
  long long dx, dy;
  step_of(label, &dx, &dy);
  Point q = p;
  q[0] += double(dx);
  q[1] += double(dy);
  return q;
}

std::string TranslationAction::element_key(const Word& w) const {
  long long nx = 0, ny = 0;
  for (const std::string& label : w) {
    long long dx, dy;
    step_of(label, &dx, &dy);
    nx += dx;
    ny += dy;
  }
  return std::to_string(nx) + "," + std::to_string(ny);
}

MoebiusAction::MoebiusAction()
    : GroupAction("hyperbolic-pair", {"e", "a", "a^-1", "b", "b^-1"}) {}

h2::Moebius MoebiusAction::matrix_of(const std::string& label) const {
  const double u = 0.4;  // translation length 0.8
  h2::Moebius a{std::exp(u), 0.0, 0.0, std::exp(-u)};
  h2::Moebius b{std::cosh(u), std::sinh(u), std::sinh(u), std::cosh(u)};
  if (label == "e") return {1.0, 0.0, 0.0, 1.0};
  if (label == "a") return a;
  if (label == "a^-1") return a.inverse();
  if (label == "b") return b;
  if (label == "b^-1") return b.inverse();
  throw std::invalid_argument("unknown Moebius label: " + label);
}

std::string MoebiusAction::inverse_label(const std::string& label) const {
  if (label == "e") return "e";
  if (label == "a") return "a^-1";
  if (label == "a^-1") return "a";
  if (label == "b") return "b^-1";
  if (label == "b^-1") return "b";
  throw std::invalid_argument("unknown Moebius label: " + label);
}

Point MoebiusAction::apply(const std::string& label, const Point& p) const {
  if (p.size() != 2)
    throw std::invalid_argument("Moebius action expects half-plane points");
  h2::H2Point q = matrix_of(label).apply({p[0], p[1]});
  return Point{q.x, q.y};
}

std::string MoebiusAction::element_key(const Word& w) const {
  h2::Moebius m{1.0, 0.0, 0.0, 1.0};
  for (const std::string& label : w) m = m * matrix_of(label);
  // Normalize: matrices are det 1 already; fix the sign by the entry of
  // largest magnitude, then quantize. Words here are short (a handful of
  // letters), so rounding noise stays far below the grid.
  double entries[4] = {m.a, m.b, m.c, m.d};
  int lead = 0;
  for (int i = 1; i < 4; ++i)
    if (std::abs(entries[i]) > std::abs(entries[lead])) lead = i;
  double sign = entries[lead] < 0 ? -1.0 : 1.0;
  std::string key;
  for (double v : entries) {
    key += std::to_string(std::llround(sign * v * 1e8));
    key += ",";
  }
  return key;
}

}  // namespace bicomb
