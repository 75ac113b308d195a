#include "gtree/error.hpp"

namespace gtree {

namespace {
std::string describe_duplicates(const std::vector<std::size_t>& indices) {
    std::string msg = "duplicate points at indices";
    for (std::size_t i : indices) msg += " " + std::to_string(i);
    return msg;
}
}  // namespace

DuplicatePointsError::DuplicatePointsError(std::vector<std::size_t> indices)
    : Error(describe_duplicates(indices)), indices_(std::move(indices)) {}

}  // namespace gtree
