#pragma once

#include <iosfwd>
#include <string>

namespace hilmod {

/// One batch invocation of the pipeline.  Numeric output files serialize
/// coefficients as exact numerator/denominator pairs; floats appear only in
/// asymptotics reports, printed with 15 significant digits.
struct RunConfig {
    std::string command;  // pell | fm | verify | roots | embed | phi | check | asym
    long p = 0;
    long m = 0;
    long n = 0;
    long order = 200;  // series truncation order N
    long height = 15;  // expansion height H
    long pell_count = 5;
    long k = 1;
    long l = 1;
    long j_max = 10;
    std::string family;  // roots: "re" or a norm index k
    std::string input_path;
    std::string f1_path;
    std::string out_path;
    std::string format = "json";
    bool exact = false;
};

/// Executes the command, writing artifacts to disk and a summary to `log`.
/// Returns 0 when every check invoked by the command passes, 1 otherwise.
int run(const RunConfig& cfg, std::ostream& log);

}  // namespace hilmod
