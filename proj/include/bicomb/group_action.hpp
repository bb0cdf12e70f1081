#pragma once

#include <string>
#include <vector>

#include "bicomb/h2.hpp"
#include "bicomb/point.hpp"

namespace bicomb {

// A word in generator labels; entry 0 is the outermost factor (applied
// last). The empty word is the identity.
using Word = std::vector<std::string>;

// A finitely generated isometric action on a space's points: a labeled
// generating set closed under inverses and containing the identity label
// "e". Group elements are words; element_key collapses words representing
// the same isometry (exactly for integer translations, via quantized
// normalized matrices for Moebius actions).
class GroupAction {
 public:
  virtual ~GroupAction() = default;

  const std::string& name() const { return name_; }
  const std::vector<std::string>& generators() const { return gens_; }

  virtual std::string inverse_label(const std::string& label) const = 0;
  virtual Point apply(const std::string& label, const Point& p) const = 0;
  virtual std::string element_key(const Word& w) const = 0;

  Point apply_word(const Word& w, Point p) const;
  Word inverse_word(const Word& w) const;

 protected:
  GroupAction(std::string name, std::vector<std::string> gens)
      : name_(std::move(name)), gens_(std::move(gens)) {}

 private:
  std::string name_;
  std::vector<std::string> gens_;
};

// Z^2 acting on the Euclidean plane by unit translations;
// S = {e, x, x^-1, y, y^-1}.
class TranslationAction final : public GroupAction {
 public:
  TranslationAction();
  std::string inverse_label(const std::string& label) const override;
  Point apply(const std::string& label, const Point& p) const override;
  std::string element_key(const Word& w) const override;

 private:
  void step_of(const std::string& label, long long* dx, long long* dy) const;
};

// Two hyperbolic Moebius transformations acting on the half-plane;
// S = {e, a, a^-1, b, b^-1} with translation length 0.8 along orthogonal
// axes through i.
class MoebiusAction final : public GroupAction {
 public:
  MoebiusAction();
  std::string inverse_label(const std::string& label) const override;
  Point apply(const std::string& label, const Point& p) const override;
  std::string element_key(const Word& w) const override;

 private:
  h2::Moebius matrix_of(const std::string& label) const;
};

}  // namespace bicomb
