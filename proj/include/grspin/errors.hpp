#pragma once
#include <stdexcept>
#include <string>

namespace grspin {

// Base class for all typed failures raised by the library.
struct Error : std::runtime_error {
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// Static-chart quantity requested at or inside the horizon r <= r_s.
struct HorizonSingularity : Error {
    explicit HorizonSingularity(const std::string& what) : Error(what) {}
};

// Point at or inside the central singularity r <= 0.
struct PhysicalSingularity : Error {
    explicit PhysicalSingularity(const std::string& what) : Error(what) {}
};

// Input outside the documented domain (angles, charts, ranges).
struct DomainError : Error {
    explicit DomainError(const std::string& what) : Error(what) {}
};

// Quantities defined at different spacetime points or frames were combined.
struct FrameMismatch : Error {
    explicit FrameMismatch(const std::string& what) : Error(what) {}
};

} // namespace grspin
