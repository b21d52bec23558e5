#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include <boost/rational.hpp>

namespace auglab {

using Rational = boost::rational<std::int64_t>;

// Volume of the ideal regular hyperbolic octahedron, 8 times the Lobachevsky
// function at pi/4 (equivalently 4 times Catalan's constant).
inline constexpr double kOctahedronVolume = 3.663862376708876;

// Either the octahedron volume or an opaque, named link volume.  The name
// "OCT" is reserved for the octahedron.
class VolumeSymbol {
 public:
  static VolumeSymbol oct() { return VolumeSymbol(); }
  static VolumeSymbol named(std::string name);

  bool is_oct() const noexcept { return !name_; }
  // "OCT" for the octahedron.
  std::string name() const { return name_ ? *name_ : std::string("OCT"); }

  // The octahedron sorts first, then names lexicographically.
  friend bool operator<(const VolumeSymbol& x, const VolumeSymbol& y) { return x.name_ < y.name_; }
  friend bool operator==(const VolumeSymbol& x, const VolumeSymbol& y) { return x.name_ == y.name_; }

 private:
  VolumeSymbol() = default;
  std::optional<std::string> name_;
};

// Exact rational combination of volume symbols.  Zero coefficients are never
// stored, so equality is term-wise.
class VolumeExpr {
 public:
  VolumeExpr() = default;
  static VolumeExpr of(const VolumeSymbol& symbol, Rational coefficient = 1);

  const std::map<VolumeSymbol, Rational>& terms() const noexcept { return terms_; }
  Rational coefficient(const VolumeSymbol& symbol) const;
  bool empty() const noexcept { return terms_.empty(); }

  VolumeExpr& operator+=(const VolumeExpr& other);
  VolumeExpr& operator-=(const VolumeExpr& other);
  VolumeExpr& operator*=(Rational factor);

  friend VolumeExpr operator+(VolumeExpr x, const VolumeExpr& y) { return x += y; }
  friend VolumeExpr operator-(VolumeExpr x, const VolumeExpr& y) { return x -= y; }
  friend VolumeExpr operator*(Rational k, VolumeExpr x) { return x *= k; }
  friend bool operator==(const VolumeExpr& x, const VolumeExpr& y) { return x.terms_ == y.terms_; }

 private:
  void add(const VolumeSymbol& symbol, Rational coefficient);
  std::map<VolumeSymbol, Rational> terms_;
};

// 1 * OCT.
VolumeExpr v_oct();

// vol(L1 #_b L2) = vol(L1) + vol(L2) - 4(n-2) OCT.  n = 2 is the classical
// belted sum.  Throws Error(BadBeltParameter) for n < 2.
VolumeExpr belted_sum(const VolumeExpr& left, const VolumeExpr& right, std::int64_t n);

// Volume discarded by a generalized belted sum along n belts: 4(n-2) OCT.
// Throws Error(BadBeltParameter) for n < 3.
VolumeExpr daisy_chain_volume(std::int64_t n);

using Bindings = std::map<std::string, double>;

// Substitutes numeric values; throws Error(UnboundSymbol) naming every
// missing binding.
double numeric(const VolumeExpr& expr, const Bindings& bindings = {});

struct BeltedSumNode;
using NodePtr = std::shared_ptr<const BeltedSumNode>;

struct LeafNode {
  std::string name;
  std::optional<double> volume;
};

struct SumNode {
  NodePtr left;
  NodePtr right;
  std::int64_t n = 2;
};

struct OffsetNode {
  NodePtr node;
  VolumeExpr terms;
};

struct BeltedSumNode {
  std::variant<LeafNode, SumNode, OffsetNode> value;
};

NodePtr make_leaf(std::string name, std::optional<double> volume = std::nullopt);
// Throws Error(BadBeltParameter) for n < 2.
NodePtr make_sum(NodePtr left, NodePtr right, std::int64_t n);
NodePtr make_offset(NodePtr node, VolumeExpr terms);

// Each leaf contributes its own symbol; numeric leaf volumes are left to
// leaf_bindings.
VolumeExpr evaluate(const BeltedSumNode& tree);

// Numeric volumes carried by the leaves.
Bindings leaf_bindings(const BeltedSumNode& tree);

}  // namespace auglab
