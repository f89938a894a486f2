#include "collabnet/error.hpp"

#include <utility>

namespace collabnet {

ParseError::ParseError(std::size_t row, std::string reason)
    : InputError(reason + " at row " + std::to_string(row)),
      row_(row),
      reason_(std::move(reason)) {}

}  // namespace collabnet
