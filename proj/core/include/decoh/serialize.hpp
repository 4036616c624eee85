#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "decoh/operator.hpp"
#include "decoh/spectrum.hpp"
#include "decoh/wigner.hpp"

namespace decoh {

/// Shortest exact decimal form (round-trips bit-identically).
std::string format_double(double v);

/// Operator text format: optional '#' comment lines, a header
/// `dim=<d> tag=<tag>`, then one line per matrix row of comma-separated
/// `re:im` pairs.
void write_operator(std::ostream& os, const Operator& op,
                    const std::vector<std::string>& comments = {});
Operator read_operator(std::istream& is);

/// Spectrum text format: header lines `beta=`, `epsilon=`, `hbar=`,
/// `omega_cutoff=`, then one line per transition
/// `n,nprime,re(H1x),im(H1x),re(H1p),im(H1p),omega,weight`.
void write_spectrum(std::ostream& os, const CouplingSpectrum& spectrum,
                    const std::vector<std::string>& comments = {});
CouplingSpectrum read_spectrum(std::istream& is);

/// Wigner field format: comment lines carrying `hbar=`, a `# x p W` header,
/// then one row per grid node, row-major in x then p.
void write_wigner(std::ostream& os, const WignerFunction& w,
                  const std::vector<std::string>& comments = {});
WignerFunction read_wigner(std::istream& is);

/// Comma-separated table with '#' comment lines and a column-name header.
void write_table(std::ostream& os, const std::string& header,
                 const std::vector<std::vector<double>>& rows,
                 const std::vector<std::string>& comments = {});

}  // namespace decoh
