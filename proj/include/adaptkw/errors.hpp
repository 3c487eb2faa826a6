#pragma once

#include <stdexcept>
#include <string>

namespace adaptkw {

// Error hierarchy shared across the library. Callers that need to map
// failures to process exit codes can catch the concrete types.

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Input/config problems
struct ConfigError : Error { using Error::Error; };
struct ParseError : Error { using Error::Error; };
struct VersionMismatch : Error { using Error::Error; };
struct DuplicateDocumentId : Error { using Error::Error; };
struct EmptyCorpus : Error { using Error::Error; };
struct EmptySeedSet : Error { using Error::Error; };
struct EmptyGold : Error { using Error::Error; };
struct EmptyCandidateSet : Error { using Error::Error; };

// Vector math
struct DimensionMismatch : Error { using Error::Error; };
struct ZeroVector : Error { using Error::Error; };

// Embedding backends
struct BackendUnavailable : Error { using Error::Error; };
struct MissingEmbedding : Error { using Error::Error; };

// Training
struct NoRelevantCandidates : Error { using Error::Error; };
struct NoTrainingPairs : Error { using Error::Error; };

}  // namespace adaptkw
