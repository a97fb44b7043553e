#include "fsbb/instance.hpp"

#include <charconv>
#include <filesystem>
#include <fstream>
#include <limits>
#include <random>
#include <sstream>

namespace fsbb {

namespace {

constexpr Time kTimeMax = std::numeric_limits<Time>::max();

struct Token {
    std::string_view text;
    std::size_t column;  // 1-based
};

std::vector<Token> tokenize(std::string_view line) {
    std::vector<Token> tokens;
    std::size_t i = 0;
    while (i < line.size()) {
        while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) ++i;
        if (i == line.size()) break;
        const std::size_t start = i;
        while (i < line.size() && line[i] != ' ' && line[i] != '\t' && line[i] != '\r') ++i;
        tokens.push_back({line.substr(start, i - start), start + 1});
    }
    return tokens;
}

bool is_comment_or_blank(std::string_view line) {
    const auto pos = line.find_first_not_of(" \t\r");
    return pos == std::string_view::npos || line[pos] == '#';
}

std::uint64_t parse_unsigned(const Token& tok, std::size_t line_no) {
    const auto* first = tok.text.data();
    const auto* last = first + tok.text.size();
    if (tok.text.size() > 1 && tok.text.front() == '-') {
        std::uint64_t ignored = 0;
        auto [ptr, ec] = std::from_chars(first + 1, last, ignored);
        if (ptr == last && (ec == std::errc{} || ec == std::errc::result_out_of_range)) {
            throw ParseError(line_no, tok.column,
                             "negative value '" + std::string(tok.text) + "'");
        }
    }
    std::uint64_t value = 0;
    auto [ptr, ec] = std::from_chars(first, last, value);
    if (ec == std::errc::result_out_of_range && ptr == last) {
        throw ParseError(line_no, tok.column,
                         "value '" + std::string(tok.text) + "' out of range");
    }
    if (ec != std::errc{} || ptr != last) {
        throw ParseError(line_no, tok.column,
                         "non-numeric token '" + std::string(tok.text) + "'");
    }
    return value;
}

}  // namespace

Instance::Instance(std::string name, std::vector<std::vector<Duration>> proc_time)
    : name_(std::move(name)), num_jobs_(proc_time.size()) {
    if (num_jobs_ == 0) throw std::invalid_argument("instance must have at least one job");
    num_machines_ = proc_time.front().size();
    times_.reserve(num_jobs_ * num_machines_);
    for (std::size_t j = 0; j < num_jobs_; ++j) {
        if (proc_time[j].size() != num_machines_) {
            throw std::invalid_argument("job " + std::to_string(j) + " has " +
                                        std::to_string(proc_time[j].size()) + " entries, expected " +
                                        std::to_string(num_machines_));
        }
        times_.insert(times_.end(), proc_time[j].begin(), proc_time[j].end());
    }
    validate();
}

Instance::Instance(std::string name, std::size_t num_jobs, std::size_t num_machines,
                   std::vector<Duration> flat)
    : name_(std::move(name)), num_jobs_(num_jobs), num_machines_(num_machines),
      times_(std::move(flat)) {
    validate();
}

void Instance::validate() const {
    if (num_jobs_ == 0) throw std::invalid_argument("instance must have at least one job");
    if (num_machines_ == 0) throw std::invalid_argument("instance must have at least one machine");
    if (num_jobs_ > std::numeric_limits<JobId>::max()) {
        throw std::invalid_argument("too many jobs");
    }
    if (num_jobs_ > kTimeMax / num_machines_ || times_.size() != num_jobs_ * num_machines_) {
        throw std::invalid_argument("processing-time matrix does not match " +
                                    std::to_string(num_jobs_) + "x" +
                                    std::to_string(num_machines_));
    }
    Duration max_entry = 0;
    for (Duration d : times_) max_entry = std::max(max_entry, d);
    // n * m * max bounds every makespan of the instance.
    if (max_entry != 0 && num_jobs_ * num_machines_ > kTimeMax / max_entry) {
        throw std::invalid_argument("makespan would overflow 64 bits");
    }
}

Time Instance::total_time(JobId job) const noexcept {
    Time sum = 0;
    for (Duration d : job_row(job)) sum += d;
    return sum;
}

ParseError::ParseError(std::size_t line, std::size_t column, const std::string& what)
    : std::runtime_error("line " + std::to_string(line) + ", column " + std::to_string(column) +
                         ": " + what),
      line_(line), column_(column), detail_(what) {}

Instance parse_instance(std::istream& in, std::string name) {
    std::string line;
    std::size_t line_no = 0;
    std::size_t num_jobs = 0;
    std::size_t num_machines = 0;
    bool have_header = false;
    std::vector<Duration> flat;
    std::size_t rows = 0;

    while (std::getline(in, line)) {
        ++line_no;
        if (is_comment_or_blank(line)) continue;
        const auto tokens = tokenize(line);

        if (!have_header) {
            if (tokens.size() != 2) {
                throw ParseError(line_no, tokens.empty() ? 1 : tokens.front().column,
                                 "malformed header: expected '<num_jobs> <num_machines>', found " +
                                     std::to_string(tokens.size()) + " tokens");
            }
            const auto n = parse_unsigned(tokens[0], line_no);
            const auto m = parse_unsigned(tokens[1], line_no);
            if (n == 0) throw ParseError(line_no, tokens[0].column, "header: num_jobs must be positive");
            if (m == 0) throw ParseError(line_no, tokens[1].column, "header: num_machines must be positive");
            if (n > std::numeric_limits<JobId>::max() || m > kTimeMax / n) {
                throw ParseError(line_no, tokens[0].column, "header: dimensions out of range");
            }
            num_jobs = n;
            num_machines = m;
            flat.reserve(num_jobs * num_machines);
            have_header = true;
            continue;
        }

        if (rows == num_jobs) {
            throw ParseError(line_no, tokens.front().column,
                             "unexpected data after row " + std::to_string(num_jobs));
        }
        ++rows;
        if (tokens.size() != num_machines) {
            const std::size_t column =
                tokens.size() > num_machines ? tokens[num_machines].column : line.size() + 1;
            throw ParseError(line_no, column,
                             "row " + std::to_string(rows) + ": expected " +
                                 std::to_string(num_machines) + " values, found " +
                                 std::to_string(tokens.size()));
        }
        for (const auto& tok : tokens) {
            const auto value = parse_unsigned(tok, line_no);
            if (value > std::numeric_limits<Duration>::max()) {
                throw ParseError(line_no, tok.column,
                                 "value '" + std::string(tok.text) + "' out of range");
            }
            flat.push_back(static_cast<Duration>(value));
        }
    }

    if (!have_header) throw ParseError(line_no + 1, 1, "missing header");
    if (rows != num_jobs) {
        throw ParseError(line_no + 1, 1,
                         "expected " + std::to_string(num_jobs) + " job rows, found " +
                             std::to_string(rows));
    }
    try {
        return Instance(std::move(name), num_jobs, num_machines, std::move(flat));
    } catch (const std::invalid_argument& e) {
        throw ParseError(line_no, 1, e.what());
    }
}

Instance parse_instance(std::string_view text, std::string name) {
    std::istringstream in{std::string(text)};
    return parse_instance(in, std::move(name));
}

Instance load_instance(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open instance file '" + path + "'");
    try {
        return parse_instance(in, std::filesystem::path(path).stem().string());
    } catch (const ParseError& e) {
        throw ParseError(e.line(), e.column(), path + ": " + e.detail());
    }
}

void write_instance(std::ostream& out, const Instance& inst) {
    out << inst.num_jobs() << ' ' << inst.num_machines() << '\n';
    for (JobId j = 0; j < inst.num_jobs(); ++j) {
        const auto row = inst.job_row(j);
        for (std::size_t k = 0; k < row.size(); ++k) {
            if (k != 0) out << ' ';
            out << row[k];
        }
        out << '\n';
    }
}

std::string write_instance(const Instance& inst) {
    std::ostringstream out;
    write_instance(out, inst);
    return out.str();
}

Instance generate_random_instance(std::size_t num_jobs, std::size_t num_machines,
                                  Duration max_time, std::uint64_t seed) {
    if (num_jobs == 0) throw std::invalid_argument("num_jobs must be >= 1");
    if (num_machines == 0) throw std::invalid_argument("num_machines must be >= 1");
    if (max_time == 0) throw std::invalid_argument("max_time must be >= 1");

    // mt19937_64 output is fully specified by the standard; the range
    // reduction below avoids the implementation-defined distributions.
    std::mt19937_64 rng(seed);
    const std::uint64_t range = max_time;
    const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                                std::numeric_limits<std::uint64_t>::max() % range;
    std::vector<Duration> flat(num_jobs * num_machines);
    for (auto& entry : flat) {
        std::uint64_t r = rng();
        while (r >= limit) r = rng();
        entry = static_cast<Duration>(1 + r % range);
    }
    return Instance("random_n" + std::to_string(num_jobs) + "_m" + std::to_string(num_machines) +
                        "_s" + std::to_string(seed),
                    num_jobs, num_machines, std::move(flat));
}

}  // namespace fsbb
