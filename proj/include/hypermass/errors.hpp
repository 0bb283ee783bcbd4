#pragma once

#include <stdexcept>
#include <string>

namespace hypermass {

// Base class for every error thrown by the library. Each condition gets its
// own type so callers (and tests) can catch precisely.
struct Error : std::runtime_error {
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// -- geometry construction --------------------------------------------------

struct OutOfDomain : Error {
    using Error::Error;
};

struct CoincidentPoints : Error {
    using Error::Error;
};

struct DegenerateTriangle : Error {
    using Error::Error;
};

// A cevian/transversal foot does not lie on its side geodesic.
struct FootOffLine : Error {
    using Error::Error;
};

// A foot coincides with a vertex; the sinh ratio is 0 or infinite.
struct DegenerateConfiguration : Error {
    using Error::Error;
};

// -- point-mass algebra -----------------------------------------------------

struct InvalidWeight : Error {
    using Error::Error;
};

// Equal weights: the external balance point recedes to infinity.
struct EqualWeights : Error {
    using Error::Error;
};

// Unequal weights, but the configuration still has no finite external
// balance point (the weighted difference vector is not timelike).
struct NoFiniteBalancePoint : Error {
    using Error::Error;
};

// -- regions, densities, quadrature ------------------------------------------

struct InvalidRegion : Error {
    using Error::Error;
};

struct InvalidWedge : Error {
    using Error::Error;
};

struct InvalidPolygon : Error {
    using Error::Error;
};

struct InvalidDensity : Error {
    using Error::Error;
};

struct InvalidQuadratureConfig : Error {
    using Error::Error;
};

struct QuadratureNotConverged : Error {
    using Error::Error;
};

struct BalanceCheckFailed : Error {
    using Error::Error;
};

struct MeshTooFine : Error {
    using Error::Error;
};

struct BadDecomposition : Error {
    using Error::Error;
};

// -- linear sets ------------------------------------------------------------

struct InvalidSupport : Error {
    using Error::Error;
};

struct SliceExtractionFailed : Error {
    using Error::Error;
};

// -- scene / CLI ------------------------------------------------------------

struct SceneError : Error {
    using Error::Error;
};

struct UnknownName : Error {
    using Error::Error;
};

}  // namespace hypermass
