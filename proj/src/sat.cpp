#include "gowers/sat.hpp"

#include <algorithm>
#include <atomic>
#include <cerrno>
#include <chrono>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <fcntl.h>
#include <poll.h>
#include <signal.h>
#include <sys/wait.h>
#include <unistd.h>

namespace gowers {

std::size_t CnfFormula::count(ClauseGroup g) const {
    return static_cast<std::size_t>(std::count(groups.begin(), groups.end(), g));
}

void CnfFormula::append(std::vector<int> clause, ClauseGroup g) {
    if (clause.empty()) throw std::invalid_argument("empty clause");
    for (int lit : clause)
        if (lit == 0 || std::abs(lit) > vars.num_vars())
            throw std::invalid_argument("literal out of range: " + std::to_string(lit));
    clauses.push_back(std::move(clause));
    groups.push_back(g);
}

CnfFormula encode_avoidance(const CandidateTable& table, const CellIndex& index, int r) {
    if (r < 1) throw std::invalid_argument("need at least one color");
    CnfFormula f;
    f.vars = VarMap{r, index.size()};

    std::ostringstream fp;
    const Box& box = index.box();
    fp << "k=" << box.dim << " N=" << box.max_coord << " r=" << r
       << " space=" << space_name(box.space);
    f.comments.push_back(fp.str());
    f.comments.push_back(table.spec.fingerprint());
    f.comments.push_back("cells=" + std::to_string(index.size()) +
                         " candidates=" + std::to_string(table.distinct_sets.size()));

    for (std::uint32_t c = 0; c < index.size(); ++c) {
        std::vector<int> alo;
        alo.reserve(static_cast<std::size_t>(r));
        for (int i = 0; i < r; ++i) alo.push_back(f.vars.var(c, i));
        f.append(std::move(alo), ClauseGroup::AtLeastOne);
        for (int i = 0; i < r; ++i)
            for (int j = i + 1; j < r; ++j)
                f.append({-f.vars.var(c, i), -f.vars.var(c, j)}, ClauseGroup::AtMostOne);
    }
    for (std::uint32_t id : table.distinct_sets) {
        const auto& cells = table.candidates[id].cells;
        for (int i = 0; i < r; ++i) {
            std::vector<int> clause;
            clause.reserve(cells.size());
            for (std::uint32_t e : cells) clause.push_back(-f.vars.var(e, i));
            f.append(std::move(clause), ClauseGroup::Avoidance);
        }
    }
    return f;
}

CnfFormula encode_avoidance(const Box& box, int r, const StructureSpec& spec, std::size_t cap) {
    CellIndex index(box);
    auto table = build_candidate_table(index, spec, cap);
    return encode_avoidance(table, index, r);
}

std::string write_dimacs(const CnfFormula& f) {
    std::ostringstream os;
    for (const auto& c : f.comments) os << "c " << c << '\n';
    os << "p cnf " << f.vars.num_vars() << ' ' << f.clauses.size() << '\n';
    for (const auto& clause : f.clauses) {
        for (int lit : clause) os << lit << ' ';
        os << "0\n";
    }
    return os.str();
}

Coloring decode_model(const std::vector<int>& literals, const Box& box, int r) {
    CellIndex index(box);
    const VarMap vars{r, index.size()};
    std::vector<char> truth(static_cast<std::size_t>(vars.num_vars()) + 1, 0);
    for (int lit : literals) {
        if (lit == 0) continue;
        const int v = std::abs(lit);
        if (v > vars.num_vars()) continue;   // solvers may number auxiliaries past our range
        truth[static_cast<std::size_t>(v)] = lit > 0 ? 1 : 0;
    }
    std::vector<int> colors(index.size(), -1);
    for (std::uint32_t c = 0; c < index.size(); ++c) {
        for (int i = 0; i < r; ++i) {
            if (!truth[static_cast<std::size_t>(vars.var(c, i))]) continue;
            if (colors[c] != -1)
                throw ModelDecodeError("cell " + index.cell(c).to_string() +
                                       " has two colors; at-most-one is violated");
            colors[c] = i;
        }
        if (colors[c] == -1)
            throw ModelDecodeError("cell " + index.cell(c).to_string() +
                                   " has no color; at-least-one is violated");
    }
    return Coloring{box, r, std::move(colors)};
}

namespace {

std::string shell_quote(const std::string& s) {
    std::string out = "'";
    for (char c : s) {
        if (c == '\'')
            out += "'\\''";
        else
            out += c;
    }
    out += "'";
    return out;
}

struct ChildProcess {
    pid_t pid = -1;
    int out_fd = -1;

    ~ChildProcess() {
        if (out_fd >= 0) close(out_fd);
    }
};

ChildProcess spawn(const std::string& cmdline) {
    int fds[2];
    if (pipe(fds) != 0) throw std::runtime_error("pipe() failed");
    pid_t pid = fork();
    if (pid < 0) {
        close(fds[0]);
        close(fds[1]);
        throw std::runtime_error("fork() failed");
    }
    if (pid == 0) {
        dup2(fds[1], STDOUT_FILENO);
        dup2(fds[1], STDERR_FILENO);
        close(fds[0]);
        close(fds[1]);
        execl("/bin/sh", "sh", "-c", cmdline.c_str(), static_cast<char*>(nullptr));
        _exit(127);
    }
    close(fds[1]);
    ChildProcess child;
    child.pid = pid;
    child.out_fd = fds[0];
    return child;
}

}  // namespace

SolverOutcome run_external_solver(const CnfFormula& f, const std::string& command,
                                  std::int64_t wall_ms, std::string scratch_dir) {
    namespace fs = std::filesystem;
    SolverOutcome outcome;
    if (command.empty()) {
        outcome.diagnostic = "no solver command configured";
        return outcome;
    }

    if (scratch_dir.empty()) scratch_dir = fs::temp_directory_path().string();
    static std::atomic<std::uint64_t> seq{0};
    const fs::path cnf_path = fs::path(scratch_dir) /
                              ("gowers_" + std::to_string(getpid()) + "_" +
                               std::to_string(seq.fetch_add(1)) + ".cnf");
    {
        std::ofstream out(cnf_path, std::ios::binary);
        if (!out) {
            outcome.diagnostic = "cannot write " + cnf_path.string();
            return outcome;
        }
        out << write_dimacs(f);
    }
    struct Cleanup {
        fs::path p;
        ~Cleanup() {
            std::error_code ec;
            fs::remove(p, ec);
        }
    } cleanup{cnf_path};

    ChildProcess child;
    try {
        child = spawn(command + " " + shell_quote(cnf_path.string()));
    } catch (const std::exception& e) {
        outcome.diagnostic = e.what();
        return outcome;
    }

    const auto start = std::chrono::steady_clock::now();
    std::string output;
    char buf[4096];
    bool timed_out = false;
    for (;;) {
        int remaining = -1;
        if (wall_ms >= 0) {
            const auto elapsed = std::chrono::duration_cast<std::chrono::milliseconds>(
                                     std::chrono::steady_clock::now() - start)
                                     .count();
            remaining = static_cast<int>(std::max<std::int64_t>(0, wall_ms - elapsed));
            if (remaining == 0) {
                timed_out = true;
                break;
            }
        }
        pollfd pfd{child.out_fd, POLLIN, 0};
        const int rc = poll(&pfd, 1, remaining);
        if (rc < 0) {
            if (errno == EINTR) continue;
            break;
        }
        if (rc == 0) {
            timed_out = true;
            break;
        }
        const ssize_t n = read(child.out_fd, buf, sizeof buf);
        if (n < 0) {
            if (errno == EINTR) continue;
            break;
        }
        if (n == 0) break;   // EOF
        output.append(buf, static_cast<std::size_t>(n));
    }

    int wait_status = 0;
    if (timed_out) {
        kill(child.pid, SIGKILL);
        waitpid(child.pid, &wait_status, 0);
        outcome.diagnostic = "solver timed out after " + std::to_string(wall_ms) + " ms; output tail: " +
                             output.substr(output.size() > 512 ? output.size() - 512 : 0);
        return outcome;
    }
    waitpid(child.pid, &wait_status, 0);

    bool saw_sat = false, saw_unsat = false;
    std::vector<int> model;
    std::istringstream lines(output);
    std::string line;
    while (std::getline(lines, line)) {
        if (line.rfind("s ", 0) == 0) {
            if (line.find("UNSATISFIABLE") != std::string::npos)
                saw_unsat = true;
            else if (line.find("SATISFIABLE") != std::string::npos)
                saw_sat = true;
        } else if (line.rfind("v", 0) == 0 && (line.size() == 1 || line[1] == ' ')) {
            std::istringstream vs(line.substr(1));
            long long lit;
            while (vs >> lit) {
                if (lit != 0) model.push_back(static_cast<int>(lit));
            }
            if (!vs.eof()) {
                outcome.diagnostic = "malformed value line: " + line;
                return outcome;
            }
        }
    }

    if (saw_unsat) {
        outcome.status = SolverOutcome::Status::Unsat;
        return outcome;
    }
    if (saw_sat) {
        if (model.empty()) {
            outcome.diagnostic = "solver reported SATISFIABLE without a model";
            return outcome;
        }
        outcome.status = SolverOutcome::Status::Sat;
        outcome.model = std::move(model);
        return outcome;
    }

    std::ostringstream diag;
    diag << "no status line from solver";
    if (WIFEXITED(wait_status)) {
        const int code = WEXITSTATUS(wait_status);
        diag << " (exit code " << code << ")";
        if (code == 127) diag << ": command not found";
    }
    if (!output.empty())
        diag << "; output tail: " << output.substr(output.size() > 512 ? output.size() - 512 : 0);
    outcome.diagnostic = diag.str();
    return outcome;
}

}  // namespace gowers
