#pragma once

#include <vector>

#include "parabolic/lattice.hpp"

namespace parabolic {

/// Smooth step: 0 for x <= 0, 1 for x >= 1, built from exp(-1/x).
double smooth_step(double x);

/// Admissible transition functions for the Littlewood-Paley partition.
enum class BumpKind {
  exp_step,       // s(x) = exp(-1/x)
  exp_sq_step,    // s(x) = exp(-1/x^2), a second admissible choice
};

/// chi(r) = eta(r) - eta(2r), eta = 1 on [0,1], 0 on [2, inf), smooth between.
/// supp chi is [1/2, 2] and sum_i chi(2^-i r) = 1 for r > 0.
struct BumpProfile {
  BumpKind kind = BumpKind::exp_step;
  double eta(double r) const;
  double chi(double r) const;
};

enum class PartitionKind { parabolic, spatial };

/// rho(xi, tau) = |xi| + |2 pi tau|^(1/2) (parabolic) or |xi| (spatial).
double partition_radius(PartitionKind kind, const Frequency& f);

/// Dyadic family psi, phi_1..phi_Imax over the frequency lattice.
struct Partition {
  GridSpec spec;
  PartitionKind kind = PartitionKind::parabolic;
  BumpProfile bump;
  int i_max = 0;
  std::vector<double> psi_hat;
  std::vector<std::vector<double>> phi_hats;  // phi_hats[i-1] is block i

  Domain domain() const {
    return kind == PartitionKind::parabolic ? Domain::space_time : Domain::space;
  }
  /// Block i as an array (i = 0 is psi).
  const std::vector<double>& block(int i) const;
};

/// Throws std::invalid_argument if fewer than three dyadic shells fit.
Partition build_partition(const GridSpec& spec, PartitionKind kind,
                          BumpProfile bump = {});

/// Projection onto block i (0 <= i <= i_max).
Field block_project(const Partition& partition, int i, const Field& field);

/// Psi' and Phi'_i: sums of neighbouring spatial blocks, flat (== 1) on the
/// support of the corresponding core block.
struct SecondOrderBlocks {
  GridSpec spec;
  std::vector<double> psi_hat;                // psi' + phi'_1 + phi'_2
  std::vector<std::vector<double>> phi_hats;  // [i-1]: phi'_{i-1} + phi'_i + phi'_{i+1}
};

SecondOrderBlocks second_order_blocks(const Partition& spatial);

/// Radius above which lattice frequencies are treated as unreliable:
/// 2^(-1/2) times the smallest radius reached on the lattice boundary.
double nyquist_guard_radius(const GridSpec& spec, Domain d);

/// Fraction of spectral energy at or above the Nyquist guard.
double truncation_energy(const Field& field);

}  // namespace parabolic
