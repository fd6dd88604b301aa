#pragma once

#include <map>
#include <random>
#include <string>
#include <vector>

#include "nilqp/error.hpp"
#include "nilqp/exact.hpp"
#include "nilqp/lie.hpp"

namespace testing {

inline nilqp::Scalar S(const std::string& text) { return nilqp::Scalar::parse(text); }

inline nilqp::Matrix rows(std::size_t cols, std::vector<nilqp::Vector> r) {
  return nilqp::Matrix::from_rows(cols, r);
}

// Small-entry rational matrix, redrawn until invertible.
inline nilqp::Matrix random_invertible(std::size_t n, std::mt19937& rng) {
  std::uniform_int_distribution<int> num(-3, 3), den(1, 2);
  for (;;) {
    nilqp::Matrix t(n, n);
    for (std::size_t r = 0; r < n; ++r)
      for (std::size_t c = 0; c < n; ++c) t(r, c) = nilqp::Scalar::rational(num(rng), den(rng));
    if (nilqp::rank(t) == n) return t;
  }
}

inline nilqp::LieAlgebra make(std::string name, std::vector<std::string> basis,
                              std::map<std::pair<std::size_t, std::size_t>, nilqp::SparseVector> br,
                              nilqp::Field f = nilqp::Field::Q) {
  nilqp::AlgebraData d;
  d.name = std::move(name);
  d.field = f;
  d.basis = std::move(basis);
  d.brackets = std::move(br);
  return nilqp::LieAlgebra(std::move(d));
}

template <class F>
std::string error_kind(F&& f) {
  try {
    f();
  } catch (const nilqp::InputError& e) {
    return e.kind();
  } catch (const nilqp::InvariantViolation& e) {
    return e.kind();
  }
  return "";
}

}  // namespace testing
