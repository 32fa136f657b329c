#pragma once

#include <stdexcept>
#include <string>

namespace esc {

// Module error contracts. Each maps one named failure mode; all carry a message.

struct InvalidAreaSequence : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct NotDisjoint : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct InvalidInsertionPoint : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct NoSplittingPoint : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct UnsupportedArity : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct UnsupportedLength : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct LayoutMismatch : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct LengthMismatch : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct WeightTooLarge : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct TooLarge : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct NonIntegralResult : std::logic_error {
    using std::logic_error::logic_error;
};

struct MissingDataset : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct InvalidConfig : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct EmptyWhitelist : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

}  // namespace esc
