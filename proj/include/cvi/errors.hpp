#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace cvi {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Feature v has max == min; it must be dropped before normalization.
class ConstantFeature : public Error {
public:
    explicit ConstantFeature(std::size_t v)
        : Error("constant feature " + std::to_string(v)), feature(v) {}
    std::size_t feature;
};

// Feature v has zero (or numerically zero) within-cluster dispersion.
class TrivialFeature : public Error {
public:
    explicit TrivialFeature(std::size_t v)
        : Error("trivial feature " + std::to_string(v) +
                " (zero dispersion, remove during preprocessing)"),
          feature(v) {}
    std::size_t feature;
};

class DegenerateData : public Error {
public:
    using Error::Error;
};

class SingletonCluster : public Error {
public:
    explicit SingletonCluster(std::size_t point)
        : Error("point " + std::to_string(point) +
                " is in a singleton cluster"),
          point(point) {}
    std::size_t point;
};

class DegenerateK : public Error {
public:
    using Error::Error;
};

class ZeroWcss : public Error {
public:
    using Error::Error;
};

class CoincidentCentroids : public Error {
public:
    CoincidentCentroids(std::size_t l, std::size_t t)
        : Error("clusters " + std::to_string(l) + " and " + std::to_string(t) +
                " have coincident centroids"),
          first(l), second(t) {}
    std::size_t first;
    std::size_t second;
};

class LengthMismatch : public Error {
public:
    using Error::Error;
};

class RankDeficient : public Error {
public:
    using Error::Error;
};

class AllUndefined : public Error {
public:
    explicit AllUndefined(const std::string& index)
        : Error("all correlations undefined for index " + index), index(index) {}
    std::string index;
};

}  // namespace cvi
