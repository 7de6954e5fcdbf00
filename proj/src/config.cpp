#include "oam/config.hpp"

#include <cctype>
#include <charconv>
#include <fstream>
#include <sstream>

namespace oam {

namespace {

std::string trim(const std::string& s)
{
    size_t b = 0;
    size_t e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b])))
        ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1])))
        --e;
    return s.substr(b, e - b);
}

[[noreturn]] void fail(const std::string& origin, int line, const std::string& msg)
{
    std::ostringstream os;
    os << origin << ":" << line << ": " << msg;
    throw ConfigError(os.str());
}

double parse_double(const std::string& origin, int line, const std::string& key,
                    const std::string& value)
{
    try {
        size_t pos = 0;
        const double v = std::stod(value, &pos);
        if (pos != value.size())
            fail(origin, line, "trailing characters after number in '" + key + "'");
        return v;
    } catch (const ConfigError&) {
        throw;
    } catch (const std::exception&) {
        fail(origin, line, "cannot parse number '" + value + "' for '" + key + "'");
    }
}

int parse_int(const std::string& origin, int line, const std::string& key,
              const std::string& value)
{
    int v = 0;
    const auto [p, ec] = std::from_chars(value.data(), value.data() + value.size(), v);
    if (ec != std::errc() || p != value.data() + value.size())
        fail(origin, line, "cannot parse integer '" + value + "' for '" + key + "'");
    return v;
}

bool is_pow2(int n)
{
    return n > 0 && (n & (n - 1)) == 0;
}

} // namespace

const char* to_string(Convention c)
{
    switch (c) {
    case Convention::fixed_w0:
        return "fixed_w0";
    case Convention::fixed_rms:
        return "fixed_rms";
    case Convention::kinoform:
        return "kinoform";
    }
    return "?";
}

void ExperimentConfig::validate() const
{
    if (!(wavelength > 0.0))
        throw ConfigError("experiment.wavelength must be positive");
    if (!(w0 > 0.0))
        throw ConfigError("experiment.w0 must be positive");
    if (!(r_rms0 > 0.0))
        throw ConfigError("experiment.r_rms0 must be positive");
    if (ell_min > ell_max)
        throw ConfigError("experiment.ell_min must not exceed experiment.ell_max");
    if (ell_min < 0)
        throw ConfigError("experiment.ell_min must be >= 0");
    if (conventions.empty())
        throw ConfigError("experiment.convention must select at least one family");
    if (!is_pow2(grid_n) || grid_n < 64)
        throw ConfigError("grid.n must be a power of two >= 64");
    if (grid_extent < 0.0)
        throw ConfigError("grid.extent must be positive or auto");
    if (!(z_window_lo > 0.0) || !(z_window_hi > z_window_lo))
        throw ConfigError("propagation.z_min/z_max must satisfy 0 < z_min < z_max");
    if (z_count < 3)
        throw ConfigError("propagation.z_count must be >= 3");
    if (padding != 1 && padding != 2 && padding != 4)
        throw ConfigError("propagation.padding must be 1, 2 or 4");
    if (p_max_limit < 0)
        throw ConfigError("kinoform.p_max must be >= 0");
    if (basis_w0 < 0.0)
        throw ConfigError("kinoform.basis_w0 must be positive or omitted");
    if (out_dir.empty())
        throw ConfigError("output.dir must not be empty");
}

ExperimentConfig parse_config_text(const std::string& text, const std::string& origin)
{
    ExperimentConfig cfg;
    std::istringstream is(text);
    std::string raw;
    std::string section;
    int line = 0;

    while (std::getline(is, raw)) {
        ++line;
        const size_t comment = raw.find_first_of("#;");
        std::string s = trim(comment == std::string::npos ? raw : raw.substr(0, comment));
        if (s.empty())
            continue;

        if (s.front() == '[') {
            if (s.back() != ']')
                fail(origin, line, "unterminated section header");
            section = trim(s.substr(1, s.size() - 2));
            if (section != "experiment" && section != "grid" && section != "propagation"
                && section != "kinoform" && section != "output")
                fail(origin, line, "unknown section '" + section + "'");
            continue;
        }

        const size_t eq = s.find('=');
        if (eq == std::string::npos)
            fail(origin, line, "expected key = value");
        const std::string key = trim(s.substr(0, eq));
        const std::string value = trim(s.substr(eq + 1));
        if (key.empty())
            fail(origin, line, "empty key");
        if (value.empty())
            fail(origin, line, "empty value for '" + key + "'");
        const std::string qual = section.empty() ? key : section + "." + key;

        if (qual == "experiment.name") {
            cfg.name = value;
        } else if (qual == "experiment.wavelength") {
            cfg.wavelength = parse_double(origin, line, qual, value);
        } else if (qual == "experiment.w0") {
            cfg.w0 = parse_double(origin, line, qual, value);
            cfg.w0_given = true;
        } else if (qual == "experiment.r_rms0") {
            cfg.r_rms0 = parse_double(origin, line, qual, value);
            cfg.r_rms0_given = true;
        } else if (qual == "experiment.ell_min") {
            cfg.ell_min = parse_int(origin, line, qual, value);
        } else if (qual == "experiment.ell_max") {
            cfg.ell_max = parse_int(origin, line, qual, value);
        } else if (qual == "experiment.convention") {
            if (value == "both") {
                cfg.conventions = {Convention::fixed_w0, Convention::fixed_rms};
            } else if (value == "fixed_w0") {
                cfg.conventions = {Convention::fixed_w0};
            } else if (value == "fixed_rms") {
                cfg.conventions = {Convention::fixed_rms};
            } else {
                fail(origin, line, "experiment.convention must be fixed_w0, fixed_rms or both");
            }
        } else if (qual == "grid.n") {
            cfg.grid_n = parse_int(origin, line, qual, value);
        } else if (qual == "grid.extent") {
            cfg.grid_extent = value == "auto" ? 0.0 : parse_double(origin, line, qual, value);
        } else if (qual == "propagation.z_min") {
            cfg.z_window_lo = parse_double(origin, line, qual, value);
        } else if (qual == "propagation.z_max") {
            cfg.z_window_hi = parse_double(origin, line, qual, value);
        } else if (qual == "propagation.z_count") {
            cfg.z_count = parse_int(origin, line, qual, value);
        } else if (qual == "propagation.padding") {
            cfg.padding = parse_int(origin, line, qual, value);
        } else if (qual == "kinoform.p_max") {
            cfg.p_max_limit = parse_int(origin, line, qual, value);
        } else if (qual == "kinoform.basis_w0") {
            cfg.basis_w0 = parse_double(origin, line, qual, value);
        } else if (qual == "output.dir") {
            cfg.out_dir = value;
        } else {
            fail(origin, line, "unknown key '" + qual + "'");
        }
    }

    try {
        cfg.validate();
    } catch (const ConfigError& e) {
        throw ConfigError(origin + ": " + e.what());
    }
    return cfg;
}

ExperimentConfig parse_config_file(const std::filesystem::path& path)
{
    std::ifstream is(path);
    if (!is)
        throw ConfigError("cannot open config file " + path.string());
    std::ostringstream buf;
    buf << is.rdbuf();
    return parse_config_text(buf.str(), path.filename().string());
}

} // namespace oam
