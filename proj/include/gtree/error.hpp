#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace gtree {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Two rectangles share a center, so no direction exists to separate them.
class CoincidentCentersError : public Error {
public:
    CoincidentCentersError() : Error("rectangle centers coincide") {}
};

class TooFewPointsError : public Error {
public:
    explicit TooFewPointsError(std::size_t count)
        : Error("triangulation needs at least 2 points, got " + std::to_string(count)) {}
};

/// Raised by the triangulation when two input points are identical.
class DuplicatePointsError : public Error {
public:
    explicit DuplicatePointsError(std::vector<std::size_t> indices);

    const std::vector<std::size_t>& indices() const noexcept { return indices_; }

private:
    std::vector<std::size_t> indices_;
};

class DisconnectedGraphError : public Error {
public:
    explicit DisconnectedGraphError(std::size_t unreached)
        : Error("graph is disconnected: node " + std::to_string(unreached) + " is unreachable"),
          node_(unreached) {}

    std::size_t node() const noexcept { return node_; }

private:
    std::size_t node_;
};

class IndexOutOfRangeError : public Error {
public:
    IndexOutOfRangeError(std::size_t index, std::size_t count)
        : Error("node index " + std::to_string(index) + " out of range (node count " +
                std::to_string(count) + ")") {}
};

/// Input is geometrically degenerate for the requested measure.
class DegenerateInputError : public Error {
public:
    using Error::Error;
};

class InvalidArgumentError : public Error {
public:
    using Error::Error;
};

}  // namespace gtree
