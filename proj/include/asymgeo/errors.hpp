#pragma once

#include <stdexcept>
#include <string>

namespace asymgeo {

struct GeomError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct DegenerateInput : GeomError {
    explicit DegenerateInput(const std::string& what = "degenerate input")
        : GeomError(what) {}
};

struct ZeroDirection : GeomError {
    ZeroDirection() : GeomError("zero direction vector") {}
};

struct EmptyOrDegenerateIntersection : GeomError {
    EmptyOrDegenerateIntersection()
        : GeomError("intersection empty or lower-dimensional") {}
};

struct SingularMap : GeomError {
    SingularMap() : GeomError("linear map is singular") {}
};

struct OriginNotInterior : GeomError {
    OriginNotInterior() : GeomError("origin not strictly interior") {}
};

struct NotCentered : GeomError {
    explicit NotCentered(const std::string& what = "body is not Minkowski centered")
        : GeomError(what) {}
};

struct NotContained : GeomError {
    NotContained() : GeomError("first body is not contained in the second") {}
};

struct GaugeNotSymmetric : GeomError {
    GaugeNotSymmetric() : GeomError("gauge body is not 0-symmetric") {}
};

struct OutOfDomain : GeomError {
    explicit OutOfDomain(const std::string& what = "argument outside admissible domain")
        : GeomError(what) {}
};

struct InfeasibleParams : GeomError {
    explicit InfeasibleParams(const std::string& what = "parameters violate feasibility")
        : GeomError(what) {}
};

struct OutOfRegion : GeomError {
    explicit OutOfRegion(const std::string& what = "target outside attainable region")
        : GeomError(what) {}
};

struct AsymmetryTooSmall : GeomError {
    AsymmetryTooSmall() : GeomError("pipeline requires s(K) > golden ratio") {}
};

struct ParseError : GeomError {
    explicit ParseError(const std::string& what) : GeomError(what) {}
};

}  // namespace asymgeo
