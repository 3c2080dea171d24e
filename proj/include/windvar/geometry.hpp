#pragma once

#include <cmath>

namespace windvar {

struct Position {
  double x = 0.0;  // m
  double y = 0.0;  // m
};

inline double distance(const Position& a, const Position& b) {
  return std::hypot(a.x - b.x, a.y - b.y);
}

}  // namespace windvar
