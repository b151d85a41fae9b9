#pragma once

#include <cstdint>
#include <functional>

#include "nsho/types.hpp"

namespace nsho::diagmodel {

enum class Kind { HarmonicLike, CubicCounterexample, Custom };

// Diagonal generator n -> lambda_n (n >= 1).
// HarmonicLike: lambda_n = n.  CubicCounterexample: lambda_n = i n^3 + n.
struct DiagonalGenerator {
  Kind kind;
  std::function<Complex(std::int64_t)> rule;

  static DiagonalGenerator harmonic();
  static DiagonalGenerator cubic_counterexample();
  static DiagonalGenerator custom(std::function<Complex(std::int64_t)> rule);
};

// phi(T) = -inf_n Re lambda_n, attained at n = 1 for the catalogued kinds.
struct GrowthBound {
  double phi;
};

GrowthBound growth_bound(Kind kind);

// ||e^{-Tt}||_1 = e^{-t} / (1 - e^{-t}) for the harmonic-like generator.
double trace_norm_semigroup(double t);

// ||A_alpha e^{-Tt}||_q with A_alpha = T^alpha = diag(n^alpha):
//   q < inf : (sum_n n^{alpha q} e^{-t q n})^{1/q}, geometric tail <= 1e-14 rel
//   q = inf : max_n n^alpha e^{-t n}, maximised over {1, floor(alpha/t), ceil(alpha/t)}
double perturbation_schatten_norm(double alpha, SchattenIndex q, double t);

// true iff q > 1 / (1 - alpha): the exact integrability threshold of
// t -> ||A_alpha e^{-Tt}||_q near t = 0.
bool classify_pcq(double alpha, double q);

enum class CounterexampleRegime { Gibbs, UnitaryGroupOnly, NotGenerator };

// T + A_b with A_b = diag(b n) on the cubic model: the real part of the
// perturbed symbol is n (1 + b).
CounterexampleRegime counterexample_classify(double b);

// sup_n 1 / |lambda_n - r - i y| for r < -phi(T), computed exactly over the
// finitely many candidates near the resonance plus monotone tail certificates.
double resolvent_norm(Kind kind, double r, double y);

}  // namespace nsho::diagmodel
