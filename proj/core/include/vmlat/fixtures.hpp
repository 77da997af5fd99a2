#pragma once

#include <cstdint>

#include "vmlat/group_models.hpp"
#include "vmlat/vertex_model.hpp"

namespace vmlat::fixtures {

// Exact 2x2 / 3x3 building blocks (signed permutation matrices).
Matrix identity2();
Matrix pauli_x();
Matrix rotation90();   // [[0,-1],[1,0]], order 4
Matrix cycle3();       // 3-cycle permutation
Matrix neg_swap12();   // negated transposition on the first two coordinates

/// Identity operator in M_m (x) M_n.
VertexOperator identity_op(long m, long n, Mode mode = Mode::exact);
/// The tensor flip sum e_ij (x) e_ji on C^2 (x) C^2; fails the star
/// condition with a singular first sequence term.
VertexOperator swap_op(Mode mode = Mode::exact);

/// Diagonal model over {1, pauli_x}.
VertexOperator diag_pauli();
/// Second-family model over {1, pauli_x}.
VertexOperator second_pauli();
/// Diagonal model over {1, rotation90}; the quarter rotation has projective
/// order two.
VertexOperator diag_rotation();
/// Diagonal model over three 3x3 signed permutations {1, cycle3, neg_swap12}
/// generating a copy of the symmetric group on three letters.
VertexOperator diag_s3();

/// Deterministic Haar-ish random unitary (Gaussian matrix + Gram-Schmidt)
/// in approx mode.
Matrix random_unitary(long d, std::uint64_t seed);
/// Deterministic random positive diagonal twist in approx mode.
TwistQ random_twist(long m, std::uint64_t seed);
/// Deterministic random exact matrix with small rational entries; resampled
/// until invertible.
Matrix random_exact_invertible(long d, std::uint64_t seed);
/// Deterministic random exact unitary: a signed permutation scaled by roots
/// of unity in {1, i, -1, -i}.
Matrix random_exact_monomial_unitary(long d, std::uint64_t seed);

}  // namespace vmlat::fixtures
