#ifndef COBOSON_ERRORS_HPP
#define COBOSON_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace coboson {

/// Base class for all domain errors raised by this library.
class error : public std::runtime_error {
public:
    explicit error(const std::string& what) : std::runtime_error(what) {}
};

class EmptyDistribution : public error {
public:
    explicit EmptyDistribution(const std::string& what = "distribution has no positive weight")
        : error(what) {}
};

class NegativeWeight : public error {
public:
    explicit NegativeWeight(const std::string& what = "weight below -1e-15") : error(what) {}
};

class NonNormalizable : public error {
public:
    explicit NonNormalizable(const std::string& what = "weights cannot be normalized") : error(what) {}
};

class InsufficientPowerSums : public error {
public:
    explicit InsufficientPowerSums(const std::string& what = "power sums do not reach requested order")
        : error(what) {}
};

class NonPositiveLength : public error {
public:
    explicit NonPositiveLength(const std::string& what = "length must be positive") : error(what) {}
};

class DepletedMode : public error {
public:
    explicit DepletedMode(const std::string& what = "chi_N = 0: occupation N unreachable") : error(what) {}
};

class OccupationExceedsTable : public error {
public:
    explicit OccupationExceedsTable(const std::string& what = "occupation exceeds chi table range")
        : error(what) {}
};

class OutOfRange : public error {
public:
    explicit OutOfRange(const std::string& what = "argument out of admissible range") : error(what) {}
};

class AllConfigsForbidden : public error {
public:
    explicit AllConfigsForbidden(const std::string& what = "every occupation pattern has zero weight")
        : error(what) {}
};

class IrrationalInput : public error {
public:
    explicit IrrationalInput(const std::string& what = "weights not representable as bounded rationals")
        : error(what) {}
};

class WidthUnderflow : public error {
public:
    explicit WidthUnderflow(const std::string& what = "wall position too close to a box edge")
        : error(what) {}
};

class DegenerateConfiguration : public error {
public:
    explicit DegenerateConfiguration(const std::string& what = "measurement branch has zero weight")
        : error(what) {}
};

class DimensionTooLarge : public error {
public:
    explicit DimensionTooLarge(const std::string& what = "Fock-space dimension exceeds bitmask range")
        : error(what) {}
};

class InstanceTooLarge : public error {
public:
    explicit InstanceTooLarge(const std::string& what = "brute-force instance too large") : error(what) {}
};

} // namespace coboson

#endif
