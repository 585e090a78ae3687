#pragma once

#include <probo/engine.hpp>

#include <string>
#include <vector>

namespace probo {

// Built-in synthetic targets, covering input dimensions 1, 2, 3, 4 and 7:
//   sphere-{1..7}d, shifted-sphere-7d, ackley-2d, rastrigin-2d,
//   rosenbrock-3d, rosenbrock-4d, schwefel-4d, gramacy-lee-1d, wiggly-1d
std::vector<std::string> registry_names();

// Throws InvalidArgument listing the available names for an unknown name.
TargetFunction registry_lookup(const std::string& name);

}  // namespace probo
