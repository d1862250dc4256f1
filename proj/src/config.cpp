#include "subfpt/config.hpp"

#include <cctype>
#include <cstdlib>
#include <fstream>
#include <optional>
#include <sstream>

#include "subfpt/csv.hpp"

namespace subfpt {

namespace {

std::string trim(const std::string& s) {
    std::size_t a = 0;
    std::size_t b = s.size();
    while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
    while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
    return s.substr(a, b - a);
}

[[noreturn]] void fail(const std::string& origin, int line, const std::string& what) {
    throw ConfigError(origin + ":" + std::to_string(line) + ": " + what);
}

double parse_double(const std::string& origin, int line, const std::string& key,
                    const std::string& value) {
    char* end = nullptr;
    const double x = std::strtod(value.c_str(), &end);
    if (end != value.c_str() + value.size() || value.empty())
        fail(origin, line, "key '" + key + "' expects a number, got '" + value + "'");
    return x;
}

std::int64_t parse_int(const std::string& origin, int line, const std::string& key,
                       const std::string& value) {
    char* end = nullptr;
    const long long x = std::strtoll(value.c_str(), &end, 10);
    if (end != value.c_str() + value.size() || value.empty())
        fail(origin, line, "key '" + key + "' expects an integer, got '" + value + "'");
    return x;
}

std::uint64_t parse_uint(const std::string& origin, int line, const std::string& key,
                         const std::string& value) {
    char* end = nullptr;
    const unsigned long long x = std::strtoull(value.c_str(), &end, 10);
    if (end != value.c_str() + value.size() || value.empty() || value[0] == '-')
        fail(origin, line, "key '" + key + "' expects a nonnegative integer, got '" +
                               value + "'");
    return x;
}

std::vector<double> parse_list(const std::string& origin, int line,
                               const std::string& key, const std::string& value) {
    std::vector<double> out;
    std::stringstream ss(value);
    std::string item;
    while (std::getline(ss, item, ',')) {
        item = trim(item);
        if (item.empty())
            fail(origin, line, "key '" + key + "' has an empty list element");
        out.push_back(parse_double(origin, line, key, item));
    }
    if (out.empty()) fail(origin, line, "key '" + key + "' expects a list");
    return out;
}

// raw [model] fields, assembled into an FptModel only when the section is done
struct ModelFields {
    std::string kind = "half_line";
    double x0 = 1.0;
    double K = 1.0;
    double kappa = 1.0;
    double L0 = 1.0;
    double V = 0.0;
    double L = 1.0;
    double eps = 0.1;
    double A1 = 1.0;
    double p1 = 0.0;
    double C1 = 1.0;
    std::optional<double> tail_rate;
};

FptModel build_model(const ModelFields& f, const std::string& origin) {
    try {
        if (f.kind == "half_line") return FptModel::half_line(f.x0, f.K);
        if (f.kind == "partial_absorb")
            return FptModel::partial_absorb(f.x0, f.K, f.kappa);
        if (f.kind == "drift_interval")
            return FptModel::drift_interval(f.x0, f.L0, f.K, f.V);
        if (f.kind == "narrow_escape_sphere")
            return FptModel::narrow_escape_sphere(f.L, f.K, f.eps);
        if (f.kind == "generic_short_time")
            return FptModel::generic_short_time(f.A1, f.p1, f.C1, f.tail_rate);
    } catch (const std::invalid_argument& e) {
        throw ConfigError(origin + ": invalid [model] block: " + e.what());
    }
    throw ConfigError(origin + ": unknown model kind '" + f.kind + "'");
}

}  // namespace

ExperimentConfig parse_config_text(const std::string& text,
                                   const std::string& origin) {
    ExperimentConfig cfg;
    ModelFields model;
    std::string section = "run";  // keys before any section header act as [run]

    std::istringstream in(text);
    std::string raw;
    int line_no = 0;
    while (std::getline(in, raw)) {
        ++line_no;
        const std::size_t hash = raw.find('#');
        if (hash != std::string::npos) raw.erase(hash);
        const std::string line = trim(raw);
        if (line.empty()) continue;

        if (line.front() == '[') {
            if (line.back() != ']')
                fail(origin, line_no, "malformed section header '" + line + "'");
            section = trim(line.substr(1, line.size() - 2));
            if (section != "model" && section != "run" && section != "tolerances")
                fail(origin, line_no, "unknown section [" + section + "]");
            continue;
        }

        const std::size_t eq = line.find('=');
        if (eq == std::string::npos)
            fail(origin, line_no, "expected key = value, got '" + line + "'");
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (key.empty()) fail(origin, line_no, "empty key");

        if (section == "model") {
            if (key == "kind") model.kind = value;
            else if (key == "x0") model.x0 = parse_double(origin, line_no, key, value);
            else if (key == "K") model.K = parse_double(origin, line_no, key, value);
            else if (key == "kappa") model.kappa = parse_double(origin, line_no, key, value);
            else if (key == "L0") model.L0 = parse_double(origin, line_no, key, value);
            else if (key == "V") model.V = parse_double(origin, line_no, key, value);
            else if (key == "L") model.L = parse_double(origin, line_no, key, value);
            else if (key == "eps") model.eps = parse_double(origin, line_no, key, value);
            else if (key == "A1") model.A1 = parse_double(origin, line_no, key, value);
            else if (key == "p1") model.p1 = parse_double(origin, line_no, key, value);
            else if (key == "C1") model.C1 = parse_double(origin, line_no, key, value);
            else if (key == "tail_rate")
                model.tail_rate = parse_double(origin, line_no, key, value);
            else
                fail(origin, line_no, "unknown key '" + key + "' in [model]");
        } else if (section == "run") {
            if (key == "alpha") {
                cfg.alpha = parse_double(origin, line_no, key, value);
                if (!(cfg.alpha > 0.0 && cfg.alpha <= 1.0))
                    fail(origin, line_no, "alpha must lie in (0,1]");
            } else if (key == "seed") {
                cfg.seed = parse_uint(origin, line_no, key, value);
            } else if (key == "reps") {
                cfg.reps = static_cast<int>(parse_int(origin, line_no, key, value));
                if (cfg.reps < 1) fail(origin, line_no, "reps must be >= 1");
            } else if (key == "N_grid") {
                cfg.N_grid = parse_list(origin, line_no, key, value);
                for (double n : cfg.N_grid)
                    if (!(n >= 2.0)) fail(origin, line_no, "N_grid entries must be >= 2");
            } else if (key == "N") {
                cfg.N = parse_int(origin, line_no, key, value);
                if (cfg.N < 1) fail(origin, line_no, "N must be >= 1");
            } else if (key == "k") {
                cfg.k = static_cast<int>(parse_int(origin, line_no, key, value));
                if (cfg.k < 1) fail(origin, line_no, "k must be >= 1");
            } else if (key == "output_path") {
                cfg.output_path = value;
            } else if (key == "threads") {
                cfg.threads = static_cast<int>(parse_int(origin, line_no, key, value));
                if (cfg.threads < 0) fail(origin, line_no, "threads must be >= 0");
            } else if (key == "t_min") {
                cfg.t_min = parse_double(origin, line_no, key, value);
                if (!(cfg.t_min > 0.0)) fail(origin, line_no, "t_min must be > 0");
            } else if (key == "t_max") {
                cfg.t_max = parse_double(origin, line_no, key, value);
                if (!(cfg.t_max > 0.0)) fail(origin, line_no, "t_max must be > 0");
            } else if (key == "t_points") {
                cfg.t_points = static_cast<int>(parse_int(origin, line_no, key, value));
                if (cfg.t_points < 2) fail(origin, line_no, "t_points must be >= 2");
            } else if (key == "x_min") {
                cfg.x_min = parse_double(origin, line_no, key, value);
            } else if (key == "x_max") {
                cfg.x_max = parse_double(origin, line_no, key, value);
            } else if (key == "x_points") {
                cfg.x_points = static_cast<int>(parse_int(origin, line_no, key, value));
                if (cfg.x_points < 2) fail(origin, line_no, "x_points must be >= 2");
            } else if (key == "t_grid") {
                cfg.t_grid = parse_list(origin, line_no, key, value);
                for (double t : cfg.t_grid)
                    if (!(t >= 0.0)) fail(origin, line_no, "t_grid entries must be >= 0");
            } else if (key == "ds") {
                cfg.ds = parse_double(origin, line_no, key, value);
                if (!(cfg.ds > 0.0)) fail(origin, line_no, "ds must be > 0");
            } else if (key == "em_step") {
                cfg.em_step = parse_double(origin, line_no, key, value);
                if (!(cfg.em_step > 0.0)) fail(origin, line_no, "em_step must be > 0");
            } else if (key == "s_budget") {
                cfg.s_budget = parse_double(origin, line_no, key, value);
                if (!(cfg.s_budget > 0.0)) fail(origin, line_no, "s_budget must be > 0");
            } else {
                fail(origin, line_no, "unknown key '" + key + "' in [run]");
            }
        } else {  // tolerances
            if (key == "abs_tol") {
                cfg.acc.abs_tol = parse_double(origin, line_no, key, value);
                if (!(cfg.acc.abs_tol >= 0.0)) fail(origin, line_no, "abs_tol must be >= 0");
            } else if (key == "rel_tol") {
                cfg.acc.rel_tol = parse_double(origin, line_no, key, value);
                if (!(cfg.acc.rel_tol > 0.0)) fail(origin, line_no, "rel_tol must be > 0");
            } else if (key == "max_iter") {
                cfg.acc.max_iter = static_cast<int>(parse_int(origin, line_no, key, value));
                if (cfg.acc.max_iter < 1) fail(origin, line_no, "max_iter must be >= 1");
            } else {
                fail(origin, line_no, "unknown key '" + key + "' in [tolerances]");
            }
        }
    }

    if (!(cfg.t_min < cfg.t_max))
        throw ConfigError(origin + ": t_min must be smaller than t_max");
    if (!(cfg.x_min < cfg.x_max))
        throw ConfigError(origin + ": x_min must be smaller than x_max");
    cfg.model = build_model(model, origin);
    return cfg;
}

ExperimentConfig parse_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_config_text(ss.str(), path);
}

std::string serialize_config(const ExperimentConfig& cfg) {
    std::ostringstream out;
    out << "[model]\n";
    switch (cfg.model.kind) {
        case FptModelKind::half_line:
            out << "kind = half_line\n";
            out << "x0 = " << format_g17(cfg.model.x0) << "\n";
            out << "K = " << format_g17(cfg.model.K) << "\n";
            break;
        case FptModelKind::partial_absorb:
            out << "kind = partial_absorb\n";
            out << "x0 = " << format_g17(cfg.model.x0) << "\n";
            out << "K = " << format_g17(cfg.model.K) << "\n";
            out << "kappa = " << format_g17(cfg.model.kappa) << "\n";
            break;
        case FptModelKind::drift_interval:
            out << "kind = drift_interval\n";
            out << "x0 = " << format_g17(cfg.model.x0) << "\n";
            out << "L0 = " << format_g17(cfg.model.L0) << "\n";
            out << "K = " << format_g17(cfg.model.K) << "\n";
            out << "V = " << format_g17(cfg.model.V) << "\n";
            break;
        case FptModelKind::narrow_escape_sphere:
            out << "kind = narrow_escape_sphere\n";
            out << "L = " << format_g17(cfg.model.L) << "\n";
            out << "K = " << format_g17(cfg.model.K) << "\n";
            out << "eps = " << format_g17(cfg.model.eps) << "\n";
            break;
        case FptModelKind::generic_short_time:
            out << "kind = generic_short_time\n";
            out << "A1 = " << format_g17(cfg.model.A1) << "\n";
            out << "p1 = " << format_g17(cfg.model.p1) << "\n";
            out << "C1 = " << format_g17(cfg.model.C1) << "\n";
            if (cfg.model.tail_rate)
                out << "tail_rate = " << format_g17(*cfg.model.tail_rate) << "\n";
            break;
    }
    out << "[run]\n";
    out << "alpha = " << format_g17(cfg.alpha) << "\n";
    out << "seed = " << cfg.seed << "\n";
    out << "reps = " << cfg.reps << "\n";
    out << "N_grid = ";
    for (std::size_t i = 0; i < cfg.N_grid.size(); ++i)
        out << (i ? "," : "") << format_g17(cfg.N_grid[i]);
    out << "\n";
    out << "N = " << cfg.N << "\n";
    out << "k = " << cfg.k << "\n";
    if (!cfg.output_path.empty()) out << "output_path = " << cfg.output_path << "\n";
    out << "threads = " << cfg.threads << "\n";
    out << "t_min = " << format_g17(cfg.t_min) << "\n";
    out << "t_max = " << format_g17(cfg.t_max) << "\n";
    out << "t_points = " << cfg.t_points << "\n";
    out << "x_min = " << format_g17(cfg.x_min) << "\n";
    out << "x_max = " << format_g17(cfg.x_max) << "\n";
    out << "x_points = " << cfg.x_points << "\n";
    out << "t_grid = ";
    for (std::size_t i = 0; i < cfg.t_grid.size(); ++i)
        out << (i ? "," : "") << format_g17(cfg.t_grid[i]);
    out << "\n";
    out << "ds = " << format_g17(cfg.ds) << "\n";
    out << "em_step = " << format_g17(cfg.em_step) << "\n";
    out << "s_budget = " << format_g17(cfg.s_budget) << "\n";
    out << "[tolerances]\n";
    out << "abs_tol = " << format_g17(cfg.acc.abs_tol) << "\n";
    out << "rel_tol = " << format_g17(cfg.acc.rel_tol) << "\n";
    out << "max_iter = " << cfg.acc.max_iter << "\n";
    return out.str();
}

std::uint64_t fnv1a64(const std::string& bytes) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

}  // namespace subfpt
