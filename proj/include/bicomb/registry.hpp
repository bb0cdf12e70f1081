#pragma once

#include <memory>
#include <string>
#include <vector>

#include "bicomb/group_action.hpp"
#include "bicomb/modulus.hpp"
#include "bicomb/space.hpp"

namespace bicomb {

// A space bundled with the moduli its checks run against. Spaces marked
// `control` are deliberately broken and exist so the suite can prove its
// checkers are able to fail.
struct RegisteredSpace {
  SpacePtr space;
  ConvexityModulus modulus;
  LengthModulus length;
  bool control = false;
};

const std::vector<std::string>& registered_space_names();
RegisteredSpace make_space(const std::string& name);

const std::vector<std::string>& registered_action_names();
std::shared_ptr<const GroupAction> make_action(const std::string& name);

// Moduli selectable from config files: "registered" keeps the space's own,
// the rest override it (the halved and zero variants are negative controls).
ConvexityModulus make_modulus(const std::string& name,
                              const RegisteredSpace& rs);
LengthModulus make_length_modulus(const std::string& name,
                                  const RegisteredSpace& rs);

}  // namespace bicomb
