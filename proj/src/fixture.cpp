#include "dpsubmod/fixture.hpp"

#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <stdexcept>

namespace dpsubmod {

namespace {

struct RawRecord {
    std::string kind;
    std::vector<std::vector<std::string>> lines;  // tokenized, kind line excluded
};

std::vector<std::string> tokenize(const std::string& line) {
    std::vector<std::string> tokens;
    std::istringstream ss(line);
    std::string tok;
    while (ss >> tok) {
        if (tok[0] == '#') break;
        tokens.push_back(tok);
    }
    return tokens;
}

int parse_int(const std::string& s, const char* what) {
    try {
        std::size_t pos = 0;
        const int v = std::stoi(s, &pos);
        if (pos != s.size()) throw std::invalid_argument(s);
        return v;
    } catch (const std::exception&) {
        throw std::invalid_argument(std::string("fixture: bad integer for ") + what + ": " + s);
    }
}

double parse_double(const std::string& s, const char* what) {
    try {
        std::size_t pos = 0;
        const double v = std::stod(s, &pos);
        if (pos != s.size()) throw std::invalid_argument(s);
        return v;
    } catch (const std::exception&) {
        throw std::invalid_argument(std::string("fixture: bad number for ") + what + ": " + s);
    }
}

SetFunction build(const RawRecord& rec) {
    int n = -1;
    for (const auto& t : rec.lines) {
        if (t[0] == "n") {
            if (t.size() != 2) throw std::invalid_argument("fixture: n takes one value");
            n = parse_int(t[1], "n");
        }
    }
    if (n < 1) throw std::invalid_argument("fixture: record is missing a positive n");

    if (rec.kind == "cut") {
        std::vector<WeightedEdge> edges;
        for (const auto& t : rec.lines) {
            if (t[0] != "edge") continue;
            if (t.size() != 4) throw std::invalid_argument("fixture: edge takes u v w");
            edges.push_back({parse_int(t[1], "edge u"), parse_int(t[2], "edge v"),
                             parse_double(t[3], "edge weight")});
        }
        return make_cut_function(n, edges);
    }

    if (rec.kind == "coverage") {
        int sign = 1;
        std::map<std::string, int> universe;
        std::vector<std::uint64_t> sets(static_cast<std::size_t>(n), 0);
        for (const auto& t : rec.lines) {
            if (t[0] == "sign") {
                if (t.size() != 2 || (t[1] != "+1" && t[1] != "-1" && t[1] != "1")) {
                    throw std::invalid_argument("fixture: sign must be +1 or -1");
                }
                sign = (t[1] == "-1") ? -1 : 1;
            } else if (t[0] == "set") {
                if (t.size() < 2) throw std::invalid_argument("fixture: set takes an index");
                const int idx = parse_int(t[1], "set index");
                if (idx < 1 || idx > n) throw std::invalid_argument("fixture: set index out of range");
                for (std::size_t k = 2; k < t.size(); ++k) {
                    auto [it, inserted] = universe.try_emplace(t[k], static_cast<int>(universe.size()));
                    if (inserted && universe.size() > 64) {
                        throw std::invalid_argument("fixture: coverage universe exceeds 64 items");
                    }
                    sets[idx - 1] |= std::uint64_t{1} << it->second;
                }
            }
        }
        return make_coverage_function(n, sets, sign);
    }

    if (rec.kind == "modular") {
        std::vector<double> weights;
        for (const auto& t : rec.lines) {
            if (t[0] != "weights") continue;
            for (std::size_t k = 1; k < t.size(); ++k) {
                weights.push_back(parse_double(t[k], "weights"));
            }
        }
        if (static_cast<int>(weights.size()) != n) {
            throw std::invalid_argument("fixture: modular record needs exactly n weights");
        }
        return make_modular_function(weights);
    }

    if (rec.kind == "explicit-table") {
        std::optional<double> bound;
        std::vector<double> values;
        for (const auto& t : rec.lines) {
            if (t[0] == "m") {
                if (t.size() != 2) throw std::invalid_argument("fixture: m takes one value");
                bound = parse_double(t[1], "m");
            } else if (t[0] == "values") {
                for (std::size_t k = 1; k < t.size(); ++k) {
                    values.push_back(parse_double(t[k], "values"));
                }
            }
        }
        return make_table_function(n, std::move(values), bound);
    }

    throw std::invalid_argument("fixture: unknown kind '" + rec.kind + "'");
}

std::vector<RawRecord> split_records(std::istream& in) {
    std::vector<RawRecord> records;
    std::string line;
    while (std::getline(in, line)) {
        auto tokens = tokenize(line);
        if (tokens.empty()) continue;
        if (tokens[0] == "kind") {
            if (tokens.size() != 2) throw std::invalid_argument("fixture: kind takes one value");
            records.push_back(RawRecord{tokens[1], {}});
        } else {
            if (records.empty()) {
                throw std::invalid_argument("fixture: content before the first kind line");
            }
            records.back().lines.push_back(std::move(tokens));
        }
    }
    return records;
}

}  // namespace

SetFunction parse_function_record(std::istream& in) {
    auto records = split_records(in);
    if (records.size() != 1) {
        throw std::invalid_argument("fixture: expected exactly one record, got " +
                                    std::to_string(records.size()));
    }
    return build(records[0]);
}

SetFunction parse_function_record(const std::string& text) {
    std::istringstream ss(text);
    return parse_function_record(ss);
}

std::vector<SetFunction> parse_function_sequence(std::istream& in) {
    auto records = split_records(in);
    if (records.empty()) throw std::invalid_argument("fixture: no records found");
    std::vector<SetFunction> out;
    out.reserve(records.size());
    for (const auto& r : records) out.push_back(build(r));
    return out;
}

std::vector<SetFunction> parse_function_sequence(const std::string& text) {
    std::istringstream ss(text);
    return parse_function_sequence(ss);
}

std::vector<SetFunction> load_function_sequence(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("fixture: cannot open " + path);
    return parse_function_sequence(in);
}

}  // namespace dpsubmod
