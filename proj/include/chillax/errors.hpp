#ifndef CHILLAX_ERRORS_HPP
#define CHILLAX_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace chillax {

struct Error : std::runtime_error {
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// hierarchy construction
struct CycleDetected : Error { using Error::Error; };
struct MultipleRoots : Error { using Error::Error; };
struct NoRoot : Error { using Error::Error; };
struct DuplicateEdge : Error { using Error::Error; };
struct EmptyDocument : Error { using Error::Error; };
struct UnknownNode : Error { using Error::Error; };

// noise models
struct InvalidParameters : Error { using Error::Error; };
struct NotLeafLabeled : Error { using Error::Error; };

// training / inference
struct LengthMismatch : Error { using Error::Error; };
struct DimensionMismatch : Error { using Error::Error; };
struct EmptyDataset : Error { using Error::Error; };
struct StepOutOfRange : Error { using Error::Error; };
struct KTooLarge : Error { using Error::Error; };

// evaluation
struct EmptyValidationSet : Error { using Error::Error; };

// I/O
struct IoError : Error { using Error::Error; };
struct FormatError : Error { using Error::Error; };

}  // namespace chillax

#endif
