#pragma once

#include <string>

#include "apflow/scheme.hpp"

namespace apflow {

/// One run, fully specified. parse_config fills every field the text
/// leaves out from the problem preset.
struct RunConfig {
    std::string problem;
    double eps = 0.0;
    int nx = 0;
    int ny = 0;  // 2D only; defaults to nx
    double kappa = 0.0;
    double gamma = 0.0;
    double rho0 = 0.0;          // 0 = derive from the initial density mean
    double cfl = 0.0;
    LambdaMode lambda_mode = LambdaMode::Constant;
    double lambda0 = 1.0;
    double lambda_c = 0.0;
    double t_end = 0.0;
    long max_steps = 1000000;
    std::string out_dir = "out";
    int snapshot_every = 0;  // 0: initial and final snapshot only
    bool record_identities = false;
    double jump_floor = 1e-12;
};

/// Parse the flat "key = value" format ('#' starts a comment). Keys:
///   problem, epsilon, nx, ny, kappa, gamma, rho0, cfl,
///   lambda.mode (constant|adaptive|bounds), lambda.value, lambda.c,
///   t_end, max_steps, out_dir, snapshot_every, record_identities,
///   jump_floor
/// Errors name the offending line: UnknownKey, UnknownProblem, BadValue.
RunConfig parse_config(const std::string& text);

RunConfig parse_config_file(const std::string& path);

}  // namespace apflow
