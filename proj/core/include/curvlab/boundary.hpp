#pragma once

#include <string>
#include <type_traits>
#include <utility>
#include <variant>

namespace curvlab {

/// u(a) = k0, u(b) = k1.
struct Dirichlet {
  double k0 = 0.0;
  double k1 = 0.0;
};

/// psi(u'(a)) = k0, psi(u'(b)) = k1 with k0, k1 in [-1, 1].
struct Neumann {
  double k0 = 0.0;
  double k1 = 0.0;
};

/// psi(u'(a)) + l0 u(a) = k0, psi(u'(b)) + l1 u(b) = k1 with l0, l1 nonzero.
struct Robin {
  double l0 = -1.0;
  double k0 = 0.0;
  double l1 = 1.0;
  double k1 = 0.0;
};

/// u(a) = u(b), u'(a) = u'(b).
struct Periodic {};

class BoundaryCondition {
 public:
  using Variant = std::variant<Dirichlet, Neumann, Robin, Periodic>;

  BoundaryCondition(Variant v);  // NOLINT(google-explicit-constructor)
  template <class T>
    requires(std::is_constructible_v<Variant, T>)
  BoundaryCondition(T alt) : BoundaryCondition(Variant(std::move(alt))) {}  // NOLINT(google-explicit-constructor)

  [[nodiscard]] const Variant& variant() const noexcept { return v_; }
  template <class T>
  [[nodiscard]] const T* get_if() const noexcept {
    return std::get_if<T>(&v_);
  }
  [[nodiscard]] std::string name() const;
  /// Mirror image under u -> -u (kappas flip sign, multipliers unchanged).
  [[nodiscard]] BoundaryCondition negated() const;

 private:
  Variant v_;
};

}  // namespace curvlab
