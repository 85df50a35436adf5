#pragma once

#include <stdexcept>
#include <string>

namespace gemcensus {

// Base class for anything thrown by this library.
struct Error : std::runtime_error {
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// Graph construction rejects.
struct NotInvolution : Error {
    explicit NotInvolution(const std::string& msg) : Error(msg) {}
};
struct FixedPoint : Error {
    explicit FixedPoint(const std::string& msg) : Error(msg) {}
};
struct OddOrder : Error {
    explicit OddOrder(const std::string& msg) : Error(msg) {}
};
struct Disconnected : Error {
    explicit Disconnected(const std::string& msg) : Error(msg) {}
};

// Move preconditions.
struct NotADipole : Error {
    explicit NotADipole(const std::string& msg) : Error(msg) {}
};
struct WouldAnnihilate : Error {
    explicit WouldAnnihilate(const std::string& msg) : Error(msg) {}
};
struct NotARhoPair : Error {
    explicit NotARhoPair(const std::string& msg) : Error(msg) {}
};
struct Disconnects : Error {
    explicit Disconnects(const std::string& msg) : Error(msg) {}
};
struct NotAGeneralizedDipole : Error {
    explicit NotAGeneralizedDipole(const std::string& msg) : Error(msg) {}
};

// Structural preconditions.
struct NotCrystallization : Error {
    explicit NotCrystallization(const std::string& msg) : Error(msg) {}
};

// Parsing and parameter validation.
struct MalformedCode : Error {
    explicit MalformedCode(const std::string& msg) : Error(msg) {}
};
struct MalformedFile : Error {
    explicit MalformedFile(const std::string& msg) : Error(msg) {}
};
struct VersionMismatch : Error {
    explicit VersionMismatch(const std::string& msg) : Error(msg) {}
};
struct InvalidParams : Error {
    explicit InvalidParams(const std::string& msg) : Error(msg) {}
};
struct InvalidSpec : Error {
    explicit InvalidSpec(const std::string& msg) : Error(msg) {}
};

// Search/classification resource limits.
struct BudgetExhausted : Error {
    explicit BudgetExhausted(const std::string& msg) : Error(msg) {}
};

// Triangulation boundary lookups.
struct NoSuchBoundaryEdge : Error {
    explicit NoSuchBoundaryEdge(const std::string& msg) : Error(msg) {}
};

} // namespace gemcensus
