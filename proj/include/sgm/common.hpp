#ifndef SGM_COMMON_HPP
#define SGM_COMMON_HPP

#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>

namespace sgm {

using Vertex = std::uint32_t;

inline constexpr Vertex kNoVertex = std::numeric_limits<Vertex>::max();

/// Malformed arguments: out-of-range ids, bad probabilities, broken preconditions.
class InputError : public std::invalid_argument {
   public:
    explicit InputError(const std::string& what) : std::invalid_argument(what) {}
};

/// A parameter formula was evaluated outside its domain (e.g. log of a value <= 1).
class DerivationError : public std::domain_error {
   public:
    explicit DerivationError(const std::string& what) : std::domain_error(what) {}
};

/// A configured budget (enumeration count, search size) would be exceeded.
class ResourceError : public std::runtime_error {
   public:
    explicit ResourceError(const std::string& what) : std::runtime_error(what) {}
};

class IoError : public std::runtime_error {
   public:
    explicit IoError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace sgm

#endif  // SGM_COMMON_HPP
