#pragma once

#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "pgeom/rational.hpp"

namespace pgeom {

struct DomainError : std::runtime_error {
  explicit DomainError(const std::string& what) : std::runtime_error(what) {}
};

// Per-coordinate admissibility constraint.
struct Domain {
  enum class Kind { Unconstrained, Positive, Interval };
  Kind kind = Kind::Unconstrained;
  // Open interval endpoints, used when kind == Interval.
  Rational lo, hi;

  static Domain unconstrained() { return {}; }
  static Domain positive() { return {Kind::Positive, 0, 0}; }
  static Domain interval(Rational lo, Rational hi) {
    return {Kind::Interval, lo, hi};
  }

  bool admits(double x) const {
    switch (kind) {
      case Kind::Unconstrained:
        return true;
      case Kind::Positive:
        return x > 0;
      case Kind::Interval:
        return x > lo.to_double() && x < hi.to_double();
    }
    return false;
  }

  friend bool operator==(const Domain& a, const Domain& b) {
    if (a.kind != b.kind) return false;
    if (a.kind != Kind::Interval) return true;
    return a.lo == b.lo && a.hi == b.hi;
  }
};

// A coordinate chart: named coordinates with domain constraints.
class Chart {
 public:
  Chart() = default;
  Chart(std::string name, std::vector<std::string> coords,
        std::vector<Domain> domains = {})
      : name_(std::move(name)), coords_(std::move(coords)), domains_(std::move(domains)) {
    if (domains_.empty()) domains_.resize(coords_.size());
    if (domains_.size() != coords_.size())
      throw std::invalid_argument("Chart: domain count != coordinate count");
    for (std::size_t i = 0; i < coords_.size(); ++i)
      for (std::size_t j = i + 1; j < coords_.size(); ++j)
        if (coords_[i] == coords_[j])
          throw std::invalid_argument("Chart: duplicate coordinate " + coords_[i]);
  }

  const std::string& name() const { return name_; }
  const std::vector<std::string>& coords() const { return coords_; }
  const std::vector<Domain>& domains() const { return domains_; }
  int dim() const { return static_cast<int>(coords_.size()); }

  int index_of(const std::string& coord) const {
    for (std::size_t i = 0; i < coords_.size(); ++i)
      if (coords_[i] == coord) return static_cast<int>(i);
    return -1;
  }

  bool admits(const std::vector<double>& point) const {
    if (static_cast<int>(point.size()) != dim()) return false;
    for (int i = 0; i < dim(); ++i)
      if (!domains_[i].admits(point[i])) return false;
    return true;
  }

  void require_admissible(const std::vector<double>& point) const {
    if (static_cast<int>(point.size()) != dim())
      throw DomainError("point dimension " + std::to_string(point.size()) +
                        " != chart dimension " + std::to_string(dim()));
    for (int i = 0; i < dim(); ++i)
      if (!domains_[i].admits(point[i]))
        throw DomainError("coordinate " + coords_[i] + " violates its domain constraint");
  }

  // Sampling box for random admissible points: [0.1, 2] for positive
  // coordinates, [-2, 2] otherwise, intersected with declared intervals.
  std::pair<double, double> sample_box(int i) const {
    double lo = -2.0, hi = 2.0;
    const Domain& d = domains_[i];
    if (d.kind == Domain::Kind::Positive) {
      lo = 0.1;
    } else if (d.kind == Domain::Kind::Interval) {
      lo = std::max(lo, d.lo.to_double());
      hi = std::min(hi, d.hi.to_double());
    }
    return {lo, hi};
  }

  std::vector<double> sample(std::mt19937& rng) const {
    std::vector<double> p(coords_.size());
    for (int i = 0; i < dim(); ++i) {
      auto [lo, hi] = sample_box(i);
      std::uniform_real_distribution<double> dist(lo, hi);
      p[i] = dist(rng);
    }
    return p;
  }

  friend bool operator==(const Chart& a, const Chart& b) {
    return a.coords_ == b.coords_ && a.domains_ == b.domains_;
  }
  friend bool operator!=(const Chart& a, const Chart& b) { return !(a == b); }

 private:
  std::string name_;
  std::vector<std::string> coords_;
  std::vector<Domain> domains_;
};

struct ChartMismatch : std::runtime_error {
  explicit ChartMismatch(const std::string& what) : std::runtime_error(what) {}
};

inline void require_same_chart(const Chart& a, const Chart& b, const char* where) {
  if (a != b)
    throw ChartMismatch(std::string(where) + ": charts " + a.name() + " and " +
                        b.name() + " differ");
}

}  // namespace pgeom
