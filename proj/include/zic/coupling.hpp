#ifndef ZIC_COUPLING_HPP
#define ZIC_COUPLING_HPP

namespace zic {

// Reference copulas: independence, comonotone upper bound, countermonotone
// lower bound.
enum class CopulaKind { independence, upper, lower };

// Couplings a bivariate sample can be drawn from.  frechet mixes the
// independence and upper couplings with weight alpha on the upper one.
enum class CouplingKind { independence, upper_fh, lower_fh, frechet };

}  // namespace zic

#endif  // ZIC_COUPLING_HPP
