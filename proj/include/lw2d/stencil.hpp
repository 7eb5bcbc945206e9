/// @file stencil.hpp
/// @brief Discrete difference and average operators.
///
/// D1Plus u_{j,k} = u_{j+1,k} - u_{j,k}        D1Minus u_{j,k} = u_{j,k} - u_{j-1,k}
/// D1Zero = (D1Plus + D1Minus)/2               Lap1 = D1Plus D1Minus
/// A1Plus u_{j,k} = (u_{j+1,k} + u_{j,k})/2    A1Minus u_{j,k} = (u_{j,k} + u_{j-1,k})/2
/// and the same in direction 2 (the k index). All of them commute pairwise.
#pragma once

#include <span>

#include "lw2d/field.hpp"

namespace lw2d {

enum class StencilOp {
    D1Plus, D1Minus, D2Plus, D2Minus,
    D1Zero, D2Zero,
    Lap1, Lap2,
    A1Plus, A1Minus, A2Plus, A2Minus,
};

std::string to_string(StencilOp op);

/// Pointwise application over the input's valid box. On a periodic axis reads
/// wrap and nothing shrinks; on a non-periodic axis the valid box loses the
/// rows/columns whose reads would fall outside the input's box. Throws
/// std::out_of_range if the result box comes out empty.
Field apply_stencil(StencilOp op, const Field& f);

/// Composition, ops[0] applied first.
Field apply_stencil(std::span<const StencilOp> ops, const Field& f);
Field apply_stencil(std::initializer_list<StencilOp> ops, const Field& f);

/// Adjointness / commutation residuals on periodic fields, where the discrete
/// integration by parts carries no boundary terms. All entries are relative to
/// max(||u||^2, ||v||^2) (or the pointwise scale for the commutators); the
/// zero field reports exact zeros.
struct AlgebraReport {
    double skew_adjoint = 0.0;       // worst of  <Dp0 u, v> + <u, Dp0 v>,  p = 1,2
    double self_adjoint = 0.0;       // worst of  <Lapp u, v> - <u, Lapp v>
    double commutator = 0.0;         // worst pairwise |(P Q - Q P) u| over all op pairs
    double avg_decomposition = 0.0;  // worst of  ||Ad u||^2 + 1/4 ||Dd u||^2 - ||u||^2
    double scale = 0.0;

    double worst() const;
};

/// Precondition: periodic geometry (boundary-aware adjointness lives in the
/// energy verifications).
AlgebraReport check_operator_algebra(const Field& u, const Field& v);
AlgebraReport check_operator_algebra(const Field& u);

}  // namespace lw2d
