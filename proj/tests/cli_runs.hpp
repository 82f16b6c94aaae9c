#pragma once

#include <cli.hpp>

#include <filesystem>
#include <sstream>
#include <string>
#include <vector>

namespace cli_runs {

struct Run
{
    int code = 0;
    std::string out;
    std::string err;
};

inline auto data(const std::string & name) -> std::string
{
    return (std::filesystem::path(VCSP_DATA_DIR) / name).string();
}

inline auto invoke(const std::vector<std::string> & args) -> Run
{
    std::ostringstream out, err;
    Run r;
    r.code = vcsp::cli::run(args, out, err);
    r.out = out.str();
    r.err = err.str();
    return r;
}

struct Case
{
    std::vector<std::string> args;
    int code;
};

/// One invocation per command over the sample files.
inline auto sample_commands() -> std::vector<Case>
{
    return {
        {{"solve", data("triangle.inst.json")}, 0},
        {{"express", data("triangle.inst.json"), "--vars", "a,b"}, 0},
        {{"polymorphisms", data("neq_c.lang.json"), "--arity", "2"}, 0},
        {{"polymorphisms", data("big.lang.json"), "--arity", "5"}, 2},
        {{"positive-clone", data("xor.lang.json"), "--arity", "2"}, 0},
        {{"wpol-check", data("neq_c.lang.json"), data("neq_c.minmax.weighting.json")}, 0},
        {{"indicator", data("xor.lang.json"), "--arity", "1"}, 0},
        {{"indicator", data("neq_c.lang.json"), "--arity", "2"}, 0},
        {{"core", data("neq.lang.json")}, 0},
        {{"core", data("big.lang.json")}, 0},
        {{"rigid-core", data("xor.lang.json")}, 0},
        {{"reduce-rigid", data("xor.lang.json"), data("xor_c.inst.json"), "--solve"}, 0},
        {{"lift", "power", data("xor4.lang.json"), "--exponent", "2"}, 0},
        {{"lift", "power", data("square.inst.json"), "--exponent", "2"}, 0},
        {{"lift", "quotient", data("xor.lang.json"), "--congruence", data("merge01.congruence.json")}, 0},
        {{"lift", "quotient", data("triangle.inst.json"), "--congruence", data("merge01.congruence.json")}, 0},
        {{"lift", "sub", data("big.lang.json"), "--subset", "0,2", "--ops", data("sub02.ops.json")}, 0},
        {{"classify", "boolean", data("xor.lang.json")}, 0},
        {{"classify", "boolean", data("neq.lang.json")}, 0},
        {{"classify", "taylor", data("xor.lang.json")}, 0},
        {{"classify", "taylor", data("neq_c.lang.json")}, 0},
        {{"classify", "taylor", data("big.lang.json")}, 2},
        {{"classify", "conservative", data("chain3.lang.json")}, 0},
        {{"reduce-1in3", data("xor.lang.json"), data("formula.json"), "--solve"}, 0},
        {{"reduce-1in3", data("xor.lang.json"), "--seed", "7", "--random-variables", "5", "--random-clauses", "3", "--solve"}, 0},
    };
}

} // namespace cli_runs
