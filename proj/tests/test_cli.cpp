// End-to-end checks of the command line tool: run the real binary through the
// shell and inspect exit codes and output files. The binary path arrives as
// argv[1] from the test registration.

#include <sys/stat.h>
#include <sys/wait.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

namespace {

int failures = 0;

void expect(bool ok, const std::string& label) {
    std::printf("%s  %s\n", ok ? "ok  " : "FAIL", label.c_str());
    if (!ok) ++failures;
}

int run(const std::string& cmd) {
    const int status = std::system(cmd.c_str());
    if (status == -1) return -1;
    return WEXITSTATUS(status);
}

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

bool exists(const std::string& path) {
    struct stat st;
    return ::stat(path.c_str(), &st) == 0;
}

void write_file(const std::string& path, const std::string& text) {
    std::ofstream(path, std::ios::binary) << text;
}

bool contains(const std::string& text, const std::string& needle) {
    return text.find(needle) != std::string::npos;
}

// data rows of a CSV document: everything that is neither metadata nor header
std::vector<std::vector<double>> data_rows(const std::string& csv) {
    std::vector<std::vector<double>> rows;
    std::istringstream in(csv);
    std::string line;
    bool header_seen = false;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        if (!header_seen) {
            header_seen = true;
            continue;
        }
        std::vector<double> row;
        std::stringstream ss(line);
        std::string cell;
        while (std::getline(ss, cell, ',')) row.push_back(std::stod(cell));
        rows.push_back(row);
    }
    return rows;
}

}  // namespace

int main(int argc, char** argv) {
    if (argc < 2) {
        std::fprintf(stderr, "usage: cli_checks <path to the subfpt binary>\n");
        return 2;
    }
    const std::string bin = std::string("\"") + argv[1] + "\"";

    write_file("cli_sample.cfg",
               "[model]\n"
               "kind = half_line\n"
               "x0 = 1\n"
               "K = 1\n"
               "\n"
               "[run]\n"
               "alpha = 0.5\n"
               "reps = 200\n"
               "N = 50\n"
               "k = 1\n"
               "seed = 99\n");

    // deterministic sampling with metadata
    expect(run(bin + " sample --config cli_sample.cfg --out cli_a.csv") == 0,
           "sample command exits 0");
    const std::string a = slurp("cli_a.csv");
    expect(!a.empty(), "sample wrote the requested output file");
    expect(contains(a, "# tool_version=subfpt"), "tool version metadata line");
    expect(contains(a, "# seed=99"), "seed metadata line");
    expect(contains(a, "# config_digest="), "config digest metadata line");
    expect(contains(a, "# schema=sample v1"), "schema metadata line");
    expect(contains(a, "rep,T_kN"), "sample column header");
    expect(data_rows(a).size() == 200, "one row per replication");

    expect(run(bin + " sample --config cli_sample.cfg --out cli_b.csv") == 0,
           "sample rerun exits 0");
    expect(slurp("cli_b.csv") == a, "same seed reruns are byte-identical");

    expect(run(bin + " sample --config cli_sample.cfg --seed 123 --out cli_c.csv") == 0,
           "seed override exits 0");
    const std::string c = slurp("cli_c.csv");
    expect(contains(c, "# seed=123"), "seed override lands in the metadata");
    expect(c != a, "seed override changes the draws");

    // config rejection: unknown key, nonzero exit, no output written
    write_file("cli_bad.cfg", "[run]\nzeta = 1\n");
    std::remove("cli_bad_out.csv");
    expect(run(bin + " sample --config cli_bad.cfg --out cli_bad_out.csv 2> cli_err.txt") == 2,
           "unknown config key exits 2");
    expect(contains(slurp("cli_err.txt"), "config error:"),
           "config failure goes to stderr with its origin");
    expect(contains(slurp("cli_err.txt"), "cli_bad.cfg:2"),
           "config failure names file and line");
    expect(!exists("cli_bad_out.csv"), "no output file on config failure");

    // fig2-left on a short N grid: corrected rescalings beat the leading order
    write_file("cli_fig2.cfg",
               "[run]\n"
               "N_grid = 1e3, 1e4, 1e5\n");
    expect(run(bin + " fig2-left --config cli_fig2.cfg --out cli_fig2.csv") == 0,
           "fig2-left exits 0");
    const std::string fig2 = slurp("cli_fig2.csv");
    expect(contains(fig2, "N,E_TN_exact,err_leading,err_lambert,err_loglog"),
           "fig2-left column header");
    const auto rows = data_rows(fig2);
    expect(rows.size() == 3, "fig2-left has one row per N");
    bool improved = !rows.empty();
    for (const auto& row : rows)
        improved = improved && row.size() == 5 && row[3] < row[2] && row[4] < row[2];
    expect(improved, "lambert and loglog errors below leading order at every N");

    // survival grid through the quadrature route
    write_file("cli_surv.cfg",
               "[run]\n"
               "t_min = 0.1\n"
               "t_max = 10\n"
               "t_points = 5\n");
    expect(run(bin + " survival --config cli_surv.cfg --out cli_surv.csv") == 0,
           "survival exits 0");
    const auto surv = data_rows(slurp("cli_surv.csv"));
    bool decreasing = surv.size() == 5;
    for (std::size_t i = 1; decreasing && i < surv.size(); ++i)
        decreasing = surv[i][1] < surv[i - 1][1];
    expect(decreasing, "survival decreases along the t grid");

    for (const char* f :
         {"cli_sample.cfg", "cli_a.csv", "cli_b.csv", "cli_c.csv", "cli_bad.cfg",
          "cli_err.txt", "cli_fig2.cfg", "cli_fig2.csv", "cli_surv.cfg",
          "cli_surv.csv"})
        std::remove(f);

    if (failures == 0) std::printf("all cli checks passed\n");
    return failures;
}
