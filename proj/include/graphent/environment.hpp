#pragma once

#include "graphent/material.hpp"

#include <optional>

namespace graphent {

/// Two lossless half-spaces (z<0: eps_r1, z>0: eps_r2) with an optional
/// graphene sheet at z = 0. No sheet means a homogeneous eps_r2 medium.
struct Environment {
    double eps_r1 = 1.0;
    double eps_r2 = 1.0;
    std::optional<GrapheneParams> sheet;

    static Environment homogeneous(double eps_r);
    static Environment graphene(double eps_r1, double eps_r2, const GrapheneParams& sheet);

    void validate() const;
    bool has_sheet() const noexcept { return sheet.has_value(); }
    const GrapheneParams& sheet_params() const;

    double k1(double omega) const;  // wavenumber below the sheet, rad/m
    double k2(double omega) const;  // wavenumber above the sheet, rad/m
};

/// sqrt(q^2 - k^2) on the decaying branch: Re p >= 0, and Im p <= 0 when Re p == 0
/// (outgoing for e^{-i omega t}).
cplx decaying_sqrt(cplx q_squared_minus_k_squared);

} // namespace graphent
