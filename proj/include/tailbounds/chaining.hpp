// Copyright 2026 The tailbounds authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <memory>
#include <string>
#include <vector>

#include "tailbounds/specfun.hpp"

namespace tailbounds {

/// Answers covering numbers N(T, d, eps) and the one-ball radius e(T).
class CoveringOracle {
  public:
    virtual ~CoveringOracle() = default;
    virtual double radius() const = 0;                            // e(T)
    virtual std::size_t covering_number(double eps) const = 0;    // N(T, d, eps)
    /// Radii where N changes, ascending; the entropy integral is integrated
    /// exactly over these steps.
    virtual std::vector<double> breakpoints() const = 0;
};

/// Finite point set with an explicit metric matrix. Covering numbers are the
/// exact set-cover optimum (bitmask DP), which is fine at the sizes used here.
class FiniteMetricSpace : public CoveringOracle {
  public:
    explicit FiniteMetricSpace(std::vector<std::vector<double>> dist);
    double radius() const override;
    std::size_t covering_number(double eps) const override;
    std::vector<double> breakpoints() const override;
    std::size_t size() const { return n_; }
    double dist(std::size_t i, std::size_t j) const { return d_[i][j]; }

  private:
    std::size_t n_;
    std::vector<std::vector<double>> d_;
};

/// The unit circle [0, 2pi) with arc-length metric: e(T) = pi and
/// N(T, d, eps) = ceil(pi / eps) for eps in (0, pi].
class CircleSpace : public CoveringOracle {
  public:
    double radius() const override;
    std::size_t covering_number(double eps) const override;
    std::vector<double> breakpoints() const override;
};

/// Step covering function loaded from CSV rows `epsilon,N` (N nonincreasing in
/// epsilon). N is held at its smallest-epsilon value below the given range, the
/// finite-space convention.
class CsvCovering : public CoveringOracle {
  public:
    explicit CsvCovering(const std::string& path);
    CsvCovering(std::vector<double> eps, std::vector<std::size_t> n);
    double radius() const override;
    std::size_t covering_number(double eps) const override;
    std::vector<double> breakpoints() const override;

  private:
    std::vector<double> eps_;      // ascending
    std::vector<std::size_t> n_;   // nonincreasing
};

/// Maximal inequality psi^{-1}(psi(x_theta) + n) * max_norm for 0 < theta < 1.
double maximal_bound(long long n, TailIndex theta, double max_norm);

/// Light-tailed counterpart (theta >= 1): (log(1+n))^(1/theta) * max_norm.
double maximal_bound_light(long long n, TailIndex theta, double max_norm);

/// Lower bound b log^(1/theta)(n) (1 - 1/e) for the Weibull maximum.
double maximal_lower_bound(long long n, TailIndex theta, double scale);

/// Heavy-tailed Dudley bound 4 C K_theta int_0^{e(T)} [log N]^(1/theta) d eps.
/// The circle uses the exact series pi sum_{k>=2} (log k)^(1/theta)/(k(k-1))
/// with a bracketed tail remainder below 1e-10.
double dudley_bound(const CoveringOracle& space, TailIndex theta, double C);

/// The circle's entropy integral alone (the series above).
double circle_entropy_integral(TailIndex theta);

/// One cell of a partition level.
struct PartitionCell {
    std::size_t representative = 0;    // point index (finite) or unused (circle)
    double rep_angle = 0.0;            // representative angle (circle)
    int parent = -1;                   // cell index at the previous level
    std::vector<std::size_t> members;  // point indices (finite spaces)
    double arc_begin = 0.0, arc_end = 0.0;  // [begin, end) angles (circle)
};

/// Increasing sequence of partitions; level k cells fit in balls of radius
/// `radius_at(k)` and each child's representative lies in its parent.
struct PartitionSequence {
    std::vector<std::vector<PartitionCell>> levels;  // levels[k-1] = level-k cells
    double e_T = 0.0;
    bool circle = false;

    // e(T) 2^{-k} for finite spaces; the circle's equal-arc construction
    // achieves e(T) 2^{-(k-1)} (which is why its chained bound carries the
    // 2^{-(k-2)} weight).
    double radius_at(std::size_t k) const;
};

PartitionSequence dyadic_partitions(const FiniteMetricSpace& space, std::size_t k_max);
PartitionSequence dyadic_partitions_circle(std::size_t k_max);

/// Per-scale information values I_k (f_theta or Renyi), level 1 first.
struct InfoSeries {
    std::vector<double> values;
    bool renyi = true;  // false: already f_theta values
    double alpha = 2.0;
};

enum class ChainWeight { MainText, Appendix };  // 2^{-(k-1)} vs 2^{-(k-2)}
enum class ChainVariant { FTheta, Key1, Key };

/// Multiscale information bound
///   C e(T) sum_k w_k (2^(1/theta) route(I_k) + 2),
/// summed over the supplied levels plus a geometric tail majorant that holds
/// the last I_k constant.
double chained_mi_bound(const InfoSeries& series, TailIndex theta, double alpha, double e_T, double C,
                        ChainVariant variant, ChainWeight weight = ChainWeight::MainText,
                        bool tail_majorant = true);

}  // namespace tailbounds
