#include "bicomb/registry.hpp"

#include <stdexcept>
#include <tuple>
#include <utility>

#include "bicomb/euclidean.hpp"
#include "bicomb/h2.hpp"
#include "bicomb/product.hpp"
#include "bicomb/sl2.hpp"
#include "bicomb/tight_span.hpp"

namespace bicomb {
namespace {

// Negative control: the path map ignores its parameter, so constant speed
// and consistency are violated on every nondegenerate pair.
class BrokenBicombe final : public Space {
 public:
  BrokenBicombe() : Space("broken-bicombe"), inner_(2, "inner") {}
  int dim() const override { return 2; }
  double dist(const Point& a, const Point& b) const override {
    return inner_.dist(a, b);
  }
  Point bicombe(const Point& x, const Point& y, double) const override {
    return inner_.bicombe(x, y, 0.37);
  }
  Point sample(Rng& rng, double scale) const override {
    return inner_.sample(rng, scale);
  }
  double declared_tol() const override { return 1e-12; }

 private:
  EuclideanSpace inner_;
};

// Negative control: declares a strict dilation among its isometries.
class BrokenIsometry final : public Space {
 public:
  BrokenIsometry() : Space("broken-isometry"), inner_(2, "inner") {
    isos_.push_back({"dilate", [](const Point& p) {
                       Point q = p;
                       for (int i = 0; i < 2; ++i) q[i] *= 1.1;
                       return q;
                     }});
    isos_.push_back({"dilate^-1", [](const Point& p) {
                       Point q = p;
                       for (int i = 0; i < 2; ++i) q[i] /= 1.1;
                       return q;
                     }});
  }
  int dim() const override { return 2; }
  double dist(const Point& a, const Point& b) const override {
    return inner_.dist(a, b);
  }
  Point bicombe(const Point& x, const Point& y, double t) const override {
    return inner_.bicombe(x, y, t);
  }
  Point sample(Rng& rng, double scale) const override {
    return inner_.sample(rng, scale);
  }
  double declared_tol() const override { return 1e-12; }
  const std::vector<Isometry>& isometries() const override { return isos_; }

 private:
  EuclideanSpace inner_;
  std::vector<Isometry> isos_;
};

SpacePtr star3_tree() {
  // A tripod: center 0, three unit legs.
  FiniteMetric m = graph_metric(
      4, {{0, 1, 1.0}, {0, 2, 1.0}, {0, 3, 1.0}});
  return std::make_shared<TreeSpace>(realize_tree_metric(m), "tree-star3");
}

SpacePtr random8_tree() {
  Rng rng(7);
  FiniteMetric m = random_tree_metric(rng, 8);
  return std::make_shared<TreeSpace>(realize_tree_metric(m), "tree-random8");
}

}  // namespace

const std::vector<std::string>& registered_space_names() {
  static const std::vector<std::string> kNames = {
      "euclidean2", "euclidean4",   "h2",
      "sl2r-model", "tree-star3",   "tree-random8",
      "r2xh2",      "broken-bicombe", "broken-isometry",
  };
  return kNames;
}

RegisteredSpace make_space(const std::string& name) {
  RegisteredSpace rs;
  rs.modulus = linear_modulus();
  rs.length = identity_length_modulus();
  if (name == "euclidean2") {
    rs.space = std::make_shared<EuclideanSpace>(2);
  } else if (name == "euclidean4") {
    rs.space = std::make_shared<EuclideanSpace>(4);
  } else if (name == "h2") {
    rs.space = std::make_shared<h2::Space>();
  } else if (name == "sl2r-model") {
    rs.space = std::make_shared<sl2::Space>();
    rs.modulus = sl2::convexity_modulus();
    rs.length = sl2::length_modulus();
  } else if (name == "tree-star3") {
    rs.space = star3_tree();
  } else if (name == "tree-random8") {
    rs.space = random8_tree();
  } else if (name == "r2xh2") {
    auto left = std::make_shared<EuclideanSpace>(2);
    auto right = std::make_shared<h2::Space>();
    rs.space = std::make_shared<ProductSpace>(left, right, "r2xh2");
    rs.modulus = l2_combined_modulus(linear_modulus(), linear_modulus());
    rs.length =
        l2_combined_length_modulus(identity_length_modulus(), identity_length_modulus());
  } else if (name == "broken-bicombe") {
    rs.space = std::make_shared<BrokenBicombe>();
    rs.control = true;
  } else if (name == "broken-isometry") {
    rs.space = std::make_shared<BrokenIsometry>();
    rs.control = true;
  } else {
    throw std::invalid_argument("unknown space: " + name);
  }
  return rs;
}

const std::vector<std::string>& registered_action_names() {
  static const std::vector<std::string> kNames = {"integer-translations",
                                                  "hyperbolic-pair"};
  return kNames;
}

std::shared_ptr<const GroupAction> make_action(const std::string& name) {
  if (name == "integer-translations")
    return std::make_shared<TranslationAction>();
  if (name == "hyperbolic-pair") return std::make_shared<MoebiusAction>();
  throw std::invalid_argument("unknown action: " + name);
}

ConvexityModulus make_modulus(const std::string& name,
                              const RegisteredSpace& rs) {
  if (name.empty() || name == "registered") return rs.modulus;
  if (name == "linear") return linear_modulus();
  if (name == "half-linear")
    return scaled_modulus(linear_modulus(), 0.5, "half-linear");
  if (name == "monotonized") return monotonize_modulus(rs.modulus);
  throw std::invalid_argument("unknown modulus: " + name);
}

LengthModulus make_length_modulus(const std::string& name,
                                  const RegisteredSpace& rs) {
  if (name.empty() || name == "registered") return rs.length;
  if (name == "identity") return identity_length_modulus();
  if (name == "zero") return zero_length_modulus();
  if (name == "double-identity")
    return scaled_identity_length_modulus(2.0, "double-identity");
  throw std::invalid_argument("unknown length modulus: " + name);
}

}  // namespace bicomb
