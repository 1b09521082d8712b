#pragma once

#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "kmsnr/kippenhahn.hpp"
#include "kmsnr/numrange.hpp"

namespace kmsnr {

/// Parses "1.5", "-2i", "1.5+2i", "3-4i", "i". No spaces. Throws InvalidParameter.
Complex parse_complex(const std::string& text);

/// Shortest round-trip-ish form in the same syntax, 12 significant digits.
std::string format_complex(Complex z);

/// Header "theta,support,re,im,multiplicity", one row per sample, %.12g.
void write_boundary_csv(std::ostream& os, std::span<const BoundarySample> samples);
std::vector<BoundarySample> read_boundary_csv(std::istream& is);

/// Standalone SVG: closed polyline through the boundary points, axes, and a
/// viewBox padded by 10%. The y axis is flipped so the picture is upright.
void write_boundary_svg(std::ostream& os, std::span<const BoundarySample> samples);

/// {"degree", "coefficients": [{"x", "y", "z", "value"}], "factor_probe": {...}}
void write_kipp_json(std::ostream& os, const HomogeneousPoly3& p, const FactorProbeReport& probe);

}  // namespace kmsnr
