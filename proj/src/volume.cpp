#include "auglab/volume.hpp"

#include <limits>
#include <sstream>

#include "auglab/error.hpp"

namespace auglab {

namespace {

Rational belt_correction(std::int64_t n) {
  if (n > std::numeric_limits<std::int64_t>::max() / 4) {
    throw Error(ErrorKind::BadBeltParameter, "belt parameter too large: " + std::to_string(n));
  }
  return Rational(4 * (n - 2));
}

}  // namespace

VolumeSymbol VolumeSymbol::named(std::string name) {
  if (name.empty() || name == "OCT") {
    throw Error(ErrorKind::InvalidRequest, "volume names must be non-empty and not \"OCT\"");
  }
  VolumeSymbol s;
  s.name_ = std::move(name);
  return s;
}

VolumeExpr VolumeExpr::of(const VolumeSymbol& symbol, Rational coefficient) {
  VolumeExpr e;
  e.add(symbol, coefficient);
  return e;
}

Rational VolumeExpr::coefficient(const VolumeSymbol& symbol) const {
  auto it = terms_.find(symbol);
  return it == terms_.end() ? Rational(0) : it->second;
}

void VolumeExpr::add(const VolumeSymbol& symbol, Rational coefficient) {
  if (coefficient.numerator() == 0) return;
  auto [it, inserted] = terms_.try_emplace(symbol, coefficient);
  if (inserted) return;
  it->second += coefficient;
  if (it->second.numerator() == 0) terms_.erase(it);
}

VolumeExpr& VolumeExpr::operator+=(const VolumeExpr& other) {
  for (const auto& [s, c] : other.terms_) add(s, c);
  return *this;
}

VolumeExpr& VolumeExpr::operator-=(const VolumeExpr& other) {
  for (const auto& [s, c] : other.terms_) add(s, -c);
  return *this;
}

VolumeExpr& VolumeExpr::operator*=(Rational factor) {
  if (factor.numerator() == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& [s, c] : terms_) c *= factor;
  return *this;
}

VolumeExpr v_oct() { return VolumeExpr::of(VolumeSymbol::oct()); }

VolumeExpr belted_sum(const VolumeExpr& left, const VolumeExpr& right, std::int64_t n) {
  if (n < 2) throw Error(ErrorKind::BadBeltParameter, "belt parameter must be at least 2, got " + std::to_string(n));
  return left + right - VolumeExpr::of(VolumeSymbol::oct(), belt_correction(n));
}

VolumeExpr daisy_chain_volume(std::int64_t n) {
  if (n < 3) {
    throw Error(ErrorKind::BadBeltParameter, "daisy chain needs at least 3 belts, got " + std::to_string(n));
  }
  return VolumeExpr::of(VolumeSymbol::oct(), belt_correction(n));
}

double numeric(const VolumeExpr& expr, const Bindings& bindings) {
  double total = 0.0;
  std::vector<std::string> missing;
  for (const auto& [symbol, c] : expr.terms()) {
    double value = kOctahedronVolume;
    if (!symbol.is_oct()) {
      auto it = bindings.find(symbol.name());
      if (it == bindings.end()) {
        missing.push_back(symbol.name());
        continue;
      }
      value = it->second;
    }
    total += boost::rational_cast<double>(c) * value;
  }
  if (!missing.empty()) {
    std::ostringstream msg;
    msg << "unbound volume symbol" << (missing.size() > 1 ? "s" : "") << ":";
    for (const auto& m : missing) msg << ' ' << m;
    throw Error(ErrorKind::UnboundSymbol, msg.str());
  }
  return total;
}

NodePtr make_leaf(std::string name, std::optional<double> volume) {
  VolumeSymbol::named(name);
  return std::make_shared<const BeltedSumNode>(BeltedSumNode{LeafNode{std::move(name), volume}});
}

NodePtr make_sum(NodePtr left, NodePtr right, std::int64_t n) {
  if (n < 2) throw Error(ErrorKind::BadBeltParameter, "belt parameter must be at least 2, got " + std::to_string(n));
  return std::make_shared<const BeltedSumNode>(BeltedSumNode{SumNode{std::move(left), std::move(right), n}});
}

NodePtr make_offset(NodePtr node, VolumeExpr terms) {
  return std::make_shared<const BeltedSumNode>(BeltedSumNode{OffsetNode{std::move(node), std::move(terms)}});
}

VolumeExpr evaluate(const BeltedSumNode& tree) {
  struct Fold {
    VolumeExpr operator()(const LeafNode& leaf) const { return VolumeExpr::of(VolumeSymbol::named(leaf.name)); }
    VolumeExpr operator()(const SumNode& sum) const {
      return belted_sum(evaluate(*sum.left), evaluate(*sum.right), sum.n);
    }
    VolumeExpr operator()(const OffsetNode& off) const { return evaluate(*off.node) + off.terms; }
  };
  return std::visit(Fold{}, tree.value);
}

Bindings leaf_bindings(const BeltedSumNode& tree) {
  Bindings out;
  struct Collect {
    Bindings& out;
    void operator()(const LeafNode& leaf) const {
      if (leaf.volume) out[leaf.name] = *leaf.volume;
    }
    void operator()(const SumNode& sum) const {
      std::visit(*this, sum.left->value);
      std::visit(*this, sum.right->value);
    }
    void operator()(const OffsetNode& off) const { std::visit(*this, off.node->value); }
  };
  std::visit(Collect{out}, tree.value);
  return out;
}

}  // namespace auglab
