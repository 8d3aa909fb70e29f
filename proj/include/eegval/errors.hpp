#ifndef EEGVAL_ERRORS_HPP
#define EEGVAL_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace eegval {

/// Error category, used by the CLI to pick an exit code.
enum class ErrorKind { config, data, numeric };

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what)
        : std::runtime_error(what), kind_(kind) {}
    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

#define EEGVAL_DEFINE_ERROR(NAME, KIND)                                  \
    class NAME : public Error {                                          \
    public:                                                              \
        explicit NAME(const std::string& what)                           \
            : Error(ErrorKind::KIND, std::string(#NAME) + ": " + what) {} \
    }

// trial parsing and dataset assembly
EEGVAL_DEFINE_ERROR(MalformedLine, data);
EEGVAL_DEFINE_ERROR(InconsistentSampleCount, data);
EEGVAL_DEFINE_ERROR(UnknownClassPrefix, data);
EEGVAL_DEFINE_ERROR(EmptyFile, data);
EEGVAL_DEFINE_ERROR(InvalidTrial, data);
EEGVAL_DEFINE_ERROR(MissingChannel, data);
EEGVAL_DEFINE_ERROR(InsufficientTrials, data);
EEGVAL_DEFINE_ERROR(MixedMontage, data);

// configuration
EEGVAL_DEFINE_ERROR(InvalidConfig, config);
EEGVAL_DEFINE_ERROR(InvalidParam, config);

// numerics and feature extraction
EEGVAL_DEFINE_ERROR(AllZeroSignal, numeric);
EEGVAL_DEFINE_ERROR(ZeroVariance, numeric);
EEGVAL_DEFINE_ERROR(ZeroTotalBandEnergy, numeric);
EEGVAL_DEFINE_ERROR(DimensionMismatch, numeric);

// learners
EEGVAL_DEFINE_ERROR(SingleClassTraining, data);
EEGVAL_DEFINE_ERROR(NonFiniteFeature, numeric);

// validation
EEGVAL_DEFINE_ERROR(TooFewGroups, data);
EEGVAL_DEFINE_ERROR(InnerFoldInfeasible, data);

// statistics
EEGVAL_DEFINE_ERROR(EmptyInput, data);
EEGVAL_DEFINE_ERROR(SingleClass, data);
EEGVAL_DEFINE_ERROR(NoDiscordantPairs, data);
EEGVAL_DEFINE_ERROR(LengthMismatch, data);
EEGVAL_DEFINE_ERROR(DegenerateGroup, numeric);
EEGVAL_DEFINE_ERROR(ZeroPooledSd, numeric);

#undef EEGVAL_DEFINE_ERROR

} // namespace eegval

#endif
