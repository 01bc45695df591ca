#include "apflow/config.hpp"

#include <charconv>
#include <fstream>
#include <optional>
#include <sstream>

#include "apflow/benchmarks.hpp"

namespace apflow {

namespace {

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

double parse_number(const std::string& value, const std::string& line) {
    const std::string v = trim(value);
    double x = 0.0;
    const auto res = std::from_chars(v.data(), v.data() + v.size(), x);
    if (res.ec != std::errc{} || res.ptr != v.data() + v.size())
        throw BadValue("bad numeric value in line: " + line);
    return x;
}

long parse_integer(const std::string& value, const std::string& line) {
    const std::string v = trim(value);
    long x = 0;
    const auto res = std::from_chars(v.data(), v.data() + v.size(), x);
    if (res.ec != std::errc{} || res.ptr != v.data() + v.size())
        throw BadValue("bad integer value in line: " + line);
    return x;
}

bool parse_bool(const std::string& value, const std::string& line) {
    const std::string v = trim(value);
    if (v == "true" || v == "1") return true;
    if (v == "false" || v == "0") return false;
    throw BadValue("bad boolean value in line: " + line);
}

}  // namespace

RunConfig parse_config(const std::string& text) {
    std::optional<std::string> problem;
    std::optional<double> eps, kappa, gamma, rho0, cfl, lambda0, lambda_c, t_end, jump_floor;
    std::optional<long> nx, ny, max_steps, snapshot_every;
    std::optional<LambdaMode> mode;
    std::optional<bool> record_identities;
    std::optional<std::string> out_dir;

    std::istringstream in(text);
    std::string raw;
    int lineno = 0;
    while (std::getline(in, raw)) {
        ++lineno;
        std::string line = raw;
        if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw BadValue("line " + std::to_string(lineno) + " has no '=': " + raw);
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        const std::string where = "line " + std::to_string(lineno) + ": " + raw;

        if (key == "problem") {
            problem = value;
        } else if (key == "epsilon") {
            eps = parse_number(value, where);
            if (!(*eps > 0.0)) throw BadValue("epsilon must be positive; " + where);
        } else if (key == "nx") {
            nx = parse_integer(value, where);
            if (*nx < 4) throw BadValue("nx must be at least 4; " + where);
        } else if (key == "ny") {
            ny = parse_integer(value, where);
            if (*ny < 4) throw BadValue("ny must be at least 4; " + where);
        } else if (key == "kappa") {
            kappa = parse_number(value, where);
            if (!(*kappa > 0.0)) throw BadValue("kappa must be positive; " + where);
        } else if (key == "gamma") {
            gamma = parse_number(value, where);
            if (!(*gamma > 1.0)) throw BadValue("gamma must exceed 1; " + where);
        } else if (key == "rho0") {
            rho0 = parse_number(value, where);
            if (!(*rho0 > 0.0)) throw BadValue("rho0 must be positive; " + where);
        } else if (key == "cfl") {
            cfl = parse_number(value, where);
            if (!(*cfl > 0.0)) throw BadValue("cfl must be positive; " + where);
        } else if (key == "lambda.mode") {
            if (value == "constant")
                mode = LambdaMode::Constant;
            else if (value == "adaptive")
                mode = LambdaMode::Adaptive;
            else if (value == "bounds")
                mode = LambdaMode::Bounds;
            else
                throw BadValue("lambda.mode must be constant|adaptive|bounds; " + where);
        } else if (key == "lambda.value") {
            lambda0 = parse_number(value, where);
            if (!(*lambda0 >= 0.0)) throw BadValue("lambda.value must be nonnegative; " + where);
        } else if (key == "lambda.c") {
            lambda_c = parse_number(value, where);
            if (!(*lambda_c > 0.0)) throw BadValue("lambda.c must be positive; " + where);
        } else if (key == "t_end") {
            t_end = parse_number(value, where);
            if (!(*t_end >= 0.0)) throw BadValue("t_end must be nonnegative; " + where);
        } else if (key == "max_steps") {
            max_steps = parse_integer(value, where);
            if (*max_steps < 0) throw BadValue("max_steps must be nonnegative; " + where);
        } else if (key == "out_dir") {
            out_dir = value;
        } else if (key == "snapshot_every") {
            snapshot_every = parse_integer(value, where);
            if (*snapshot_every < 0) throw BadValue("snapshot_every must be nonnegative; " + where);
        } else if (key == "record_identities") {
            record_identities = parse_bool(value, where);
        } else if (key == "jump_floor") {
            jump_floor = parse_number(value, where);
            if (!(*jump_floor >= 0.0)) throw BadValue("jump_floor must be nonnegative; " + where);
        } else {
            throw UnknownKey("unknown key '" + key + "'; " + where);
        }
    }

    if (!problem) throw BadValue("missing required key: problem");
    const ProblemPreset& p = preset(*problem);  // UnknownProblem if absent

    RunConfig cfg;
    cfg.problem = *problem;
    cfg.eps = eps.value_or(p.default_eps);
    cfg.nx = static_cast<int>(nx.value_or(p.default_nx));
    cfg.ny = static_cast<int>(ny.value_or(cfg.nx));
    cfg.kappa = kappa.value_or(p.kappa);
    cfg.gamma = gamma.value_or(p.gamma);
    cfg.rho0 = rho0.value_or(0.0);
    cfg.cfl = cfl.value_or(p.cfl_for(cfg.eps));
    cfg.lambda_mode = mode.value_or(LambdaMode::Constant);
    cfg.lambda0 = lambda0.value_or(1.0);
    cfg.lambda_c = lambda_c.value_or(p.adaptive_c_for(cfg.eps));
    cfg.t_end = t_end.value_or(p.default_t_end);
    cfg.max_steps = max_steps.value_or(1000000);
    cfg.out_dir = out_dir.value_or("out");
    cfg.snapshot_every = static_cast<int>(snapshot_every.value_or(0));
    cfg.record_identities = record_identities.value_or(false);
    cfg.jump_floor = jump_floor.value_or(1e-12);
    return cfg;
}

RunConfig parse_config_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw BadValue("cannot read config file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_config(ss.str());
}

}  // namespace apflow
