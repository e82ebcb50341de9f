#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace gclscore {

/// Malformed input text (edge lists, embeddings, partition files).
class ParseError : public std::runtime_error {
public:
    ParseError(std::string message, int line)
        : std::runtime_error(std::move(message)), line_(line) {}
    int line() const { return line_; }

private:
    int line_;  // 1-based line number in the input stream
};

/// The degree sequence admits no positive weight solution: the largest
/// degree is at least the sum of all other degrees (sum(w) <= 2*max(w)),
/// which happens exactly for star graphs among connected inputs.
class InfeasibleDegreeSequence : public std::runtime_error {
public:
    InfeasibleDegreeSequence(std::string message, int witness_vertex)
        : std::runtime_error(std::move(message)), witness_(witness_vertex) {}
    int witness_vertex() const { return witness_; }

private:
    int witness_;  // vertex holding the offending maximum degree
};

/// The fixed-point weight iteration failed to reach the target residual,
/// either by exhausting max_iter or by diverging. Carries the tail of the
/// residual history for diagnosis.
class NonConvergenceError : public std::runtime_error {
public:
    NonConvergenceError(std::string message, long iterations,
                        std::vector<double> residual_trace)
        : std::runtime_error(std::move(message)),
          iterations_(iterations),
          trace_(std::move(residual_trace)) {}
    long iterations() const { return iterations_; }
    const std::vector<double>& residual_trace() const { return trace_; }

private:
    long iterations_;
    std::vector<double> trace_;
};

}  // namespace gclscore
