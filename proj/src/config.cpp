#include "hnstrata/config.hpp"

#include <atomic>
#include <cstdlib>
#include <fstream>
#include <set>
#include <sstream>
#include <thread>

namespace hnstrata {

namespace {

std::string_view trim(std::string_view s) {
    const char* ws = " \t\r";
    auto b = s.find_first_not_of(ws);
    if (b == std::string_view::npos) return {};
    auto e = s.find_last_not_of(ws);
    return s.substr(b, e - b + 1);
}

Integer parse_int(std::string_view s) {
    try {
        return parse_integer(std::string(trim(s)));
    } catch (const std::invalid_argument&) {
        throw std::invalid_argument("not an integer: '" + std::string(trim(s)) + "'");
    }
}

bool parse_bool(std::string_view s) {
    if (s == "true" || s == "yes" || s == "on" || s == "1") return true;
    if (s == "false" || s == "no" || s == "off" || s == "0") return false;
    throw std::invalid_argument("not a boolean: '" + std::string(s) + "'");
}

// cache keys are built from type tuples and flags; keep file names tame
std::string sanitize(const std::string& key) {
    std::string out;
    for (char c : key) {
        bool ok = (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') ||
                  c == '-' || c == '_' || c == '.';
        out += ok ? c : '_';
    }
    return out;
}

}  // namespace

std::vector<Integer> parse_integer_list(std::string_view text) {
    std::string_view s = trim(text);
    if (s.empty()) throw std::invalid_argument("empty integer list");
    std::vector<Integer> out;
    if (s.front() == '[') {
        if (s.back() != ']') throw std::invalid_argument("unterminated list: " + std::string(s));
        std::string_view body = trim(s.substr(1, s.size() - 2));
        if (body.empty()) return out;
        std::size_t start = 0;
        while (true) {
            auto comma = body.find(',', start);
            out.push_back(parse_int(body.substr(start, comma - start)));
            if (comma == std::string_view::npos) break;
            start = comma + 1;
        }
        return out;
    }
    if (auto dots = s.find(".."); dots != std::string_view::npos) {
        Integer lo = parse_int(s.substr(0, dots));
        Integer hi = parse_int(s.substr(dots + 2));
        for (Integer x = lo; x <= hi; ++x) out.push_back(x);
        return out;
    }
    out.push_back(parse_int(s));
    return out;
}

SweepConfig parse_config(std::string_view text) {
    SweepConfig cfg;
    std::set<std::string> seen;
    std::istringstream in{std::string(text)};
    std::string raw;
    std::size_t lineno = 0;
    while (std::getline(in, raw)) {
        ++lineno;
        std::string_view line = raw;
        if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        auto eq = line.find('=');
        if (eq == std::string_view::npos) throw ConfigError(lineno, "expected 'key = value'");
        std::string key(trim(line.substr(0, eq)));
        std::string_view value = trim(line.substr(eq + 1));
        if (key == "g") key = "genus";
        if (key == "n") key = "rank";
        if (key == "d") key = "degree";
        if (key == "output") key = "output_dir";
        if (!seen.insert(key).second) throw ConfigError(lineno, "duplicate key '" + key + "'");
        try {
            if (key == "genus") {
                cfg.genera = parse_integer_list(value);
            } else if (key == "rank") {
                cfg.ranks = parse_integer_list(value);
            } else if (key == "degree") {
                cfg.degrees = parse_integer_list(value);
            } else if (key == "curve") {
                cfg.curve = parse_curve_class(value);
            } else if (key == "output_dir") {
                if (value.empty()) throw std::invalid_argument("empty output_dir");
                cfg.output_dir = std::string(value);
            } else if (key == "cache_dir") {
                cfg.cache_dir = std::string(value);
            } else if (key == "coprime_only") {
                cfg.coprime_only = parse_bool(value);
            } else if (key == "trust_paper_strata") {
                cfg.trust_paper_strata = parse_bool(value);
            } else {
                throw std::invalid_argument("unknown key '" + key + "'");
            }
        } catch (const std::invalid_argument& e) {
            throw ConfigError(lineno, e.what());
        }
    }
    for (const char* required : {"genus", "rank", "degree", "output_dir"})
        if (!seen.count(required))
            throw ConfigError(0, std::string("missing required key '") + required + "'");
    for (const auto& g : cfg.genera)
        if (g < 2) throw ConfigError(0, "genus must be >= 2, got " + g.str());
    return cfg;
}

SweepConfig load_config(const std::filesystem::path& path) {
    return parse_config(read_file(path));
}

std::optional<std::filesystem::path> resolve_cache_dir(const SweepConfig& config) {
    if (const char* env = std::getenv("HNSTRATA_CACHE_DIR"); env && *env)
        return std::filesystem::path(env);
    if (config.cache_dir && !config.cache_dir->empty())
        return std::filesystem::path(*config.cache_dir);
    return std::nullopt;
}

std::filesystem::path AtlasCache::path_for(const std::string& key) const {
    return dir_ / (sanitize(key) + ".json");
}

std::optional<std::string> AtlasCache::get(const std::string& key) const {
    std::ifstream in(path_for(key), std::ios::binary);
    if (!in) return std::nullopt;
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void AtlasCache::put(const std::string& key, const std::string& content) const {
    std::filesystem::create_directories(dir_);
    auto path = path_for(key);
    if (std::filesystem::exists(path)) return;
    write_file_atomic(path, content);
}

std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file_atomic(const std::filesystem::path& path, const std::string& content) {
    static std::atomic<unsigned long> counter{0};
    std::ostringstream suffix;
    suffix << ".tmp." << std::hash<std::thread::id>{}(std::this_thread::get_id()) << "."
           << counter++;
    std::filesystem::path tmp = path;
    tmp += suffix.str();
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw std::runtime_error("cannot write " + tmp.string());
        out << content;
        out.flush();
        if (!out) throw std::runtime_error("write failed for " + tmp.string());
    }
    std::error_code ec;
    std::filesystem::rename(tmp, path, ec);
    if (ec) {
        std::filesystem::remove(tmp, ec);
        throw std::runtime_error("cannot rename into " + path.string());
    }
}

}  // namespace hnstrata
