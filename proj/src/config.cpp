#include <cctype>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <memory>
#include <sstream>

#include "lw2d/experiment.hpp"

namespace lw2d {

namespace {

std::string trim(const std::string& s) {
    size_t b = 0, e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    return s.substr(b, e - b);
}

struct Parser {
    ExperimentConfig cfg;
    std::string source;
    int line_no = 0;

    [[noreturn]] void fail(const std::string& msg) const {
        throw ConfigError(source + ":" + std::to_string(line_no) + ": " + msg);
    }

    double num(const std::string& v) const {
        try {
            size_t pos = 0;
            const double d = std::stod(v, &pos);
            if (pos != v.size()) fail("trailing characters in number '" + v + "'");
            return d;
        } catch (const ConfigError&) {
            throw;
        } catch (const std::exception&) {
            fail("expected a number, got '" + v + "'");
        }
    }

    int integer(const std::string& v) const {
        try {
            size_t pos = 0;
            const int i = std::stoi(v, &pos);
            if (pos != v.size()) fail("trailing characters in integer '" + v + "'");
            return i;
        } catch (const ConfigError&) {
            throw;
        } catch (const std::exception&) {
            fail("expected an integer, got '" + v + "'");
        }
    }

    bool boolean(const std::string& v) const {
        if (v == "on" || v == "true" || v == "1") return true;
        if (v == "off" || v == "false" || v == "0") return false;
        fail("expected on/off, got '" + v + "'");
    }

    void set(const std::string& key, const std::string& value) {
        auto& c = cfg;
        if (key == "geometry") {
            if (value == "periodic") c.geometry = GeomKind::Periodic;
            else if (value == "half_space") c.geometry = GeomKind::HalfSpace;
            else if (value == "quarter_space") c.geometry = GeomKind::QuarterSpace;
            else if (value == "rectangle") c.geometry = GeomKind::Rectangle;
            else fail("unknown geometry '" + value + "'");
        } else if (key == "Lx") c.Lx = num(value);
        else if (key == "Ly") c.Ly = num(value);
        else if (key == "nx") c.nx = integer(value);
        else if (key == "ny") c.ny = integer(value);
        else if (key == "a") c.a = num(value);
        else if (key == "b") c.b = num(value);
        else if (key == "cfl_target") c.cfl_target = num(value);
        else if (key == "lambda") c.lambda = num(value);
        else if (key == "mu") c.mu = num(value);
        else if (key == "n_steps") c.n_steps = integer(value);
        else if (key == "corner_delta") c.corner_delta = num(value);
        else if (key == "mixed_corner") {
            if (value == "dirichlet") c.mixed_corner = MixedCornerPolicy::Dirichlet;
            else if (value == "extrapolate") c.mixed_corner = MixedCornerPolicy::Extrapolate;
            else fail("mixed_corner must be dirichlet or extrapolate, got '" + value + "'");
        } else if (key == "dirichlet_value") c.dirichlet_value = num(value);
        else if (key == "ic") {
            if (value == "gaussian") c.init = InitKind::Gaussian;
            else if (value == "plane_wave") c.init = InitKind::PlaneWave;
            else if (value == "impulse") c.init = InitKind::Impulse;
            else if (value == "file") c.init = InitKind::File;
            else fail("unknown ic '" + value + "'");
        } else if (key == "ic_center_x") c.ic_center_x = num(value);
        else if (key == "ic_center_y") c.ic_center_y = num(value);
        else if (key == "ic_width") c.ic_width = num(value);
        else if (key == "ic_mode_x") c.ic_mode_x = integer(value);
        else if (key == "ic_mode_y") c.ic_mode_y = integer(value);
        else if (key == "ic_cell_j") c.ic_cell_j = integer(value);
        else if (key == "ic_cell_k") c.ic_cell_k = integer(value);
        else if (key == "ic_file") c.ic_file = value;
        else if (key == "output_csv") c.output_csv = value;
        else if (key == "output_dir") c.output_dir = value;
        else if (key == "diagnostics") c.diagnostics = boolean(value);
        else if (key == "blowup_threshold") c.blowup_threshold = num(value);
        else fail("unknown key '" + key + "'");
    }
};

}  // namespace

ExperimentConfig parse_config_text(const std::string& text, const std::string& source_name) {
    Parser p;
    p.source = source_name;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        ++p.line_no;
        const std::string stripped = trim(line);
        if (stripped.empty() || stripped[0] == '#') continue;
        const size_t eq = stripped.find('=');
        if (eq == std::string::npos) p.fail("expected 'key = value', got '" + stripped + "'");
        const std::string key = trim(stripped.substr(0, eq));
        const std::string value = trim(stripped.substr(eq + 1));
        if (key.empty()) p.fail("empty key");
        p.set(key, value);
    }
    p.cfg.validate_config();
    return p.cfg;
}

ExperimentConfig parse_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_config_text(buf.str(), path);
}

void ExperimentConfig::validate_config() const {
    auto fail = [](const std::string& msg) { throw ConfigError("config: " + msg); };
    if (nx < 3 || ny < 3) fail("nx and ny must be >= 3");
    if (!(Lx > 0.0) || !(Ly > 0.0)) fail("Lx and Ly must be positive");
    if (n_steps < 0) fail("n_steps must be nonnegative");
    if (!(blowup_threshold > 1.0)) fail("blowup_threshold must exceed 1");
    if (!lambda && !mu) {
        if (!(cfl_target > 0.0)) fail("cfl_target must be positive");
        if (a == 0.0 && b == 0.0) fail("cannot derive a time step with a = b = 0");
    }
    if (init == InitKind::File && ic_file.empty()) fail("ic = file requires ic_file");
    if (init == InitKind::Gaussian && ic_width < 0.0) fail("ic_width must be nonnegative");
    params();  // surfaces lambda/mu/grid inconsistencies
}

double ExperimentConfig::dt() const {
    if (lambda || mu) {
        const double l = lambda ? *lambda : *mu * dy() / dx();
        return l * dx();
    }
    const double rate_sq = a * a / (dx() * dx()) + b * b / (dy() * dy());
    return std::sqrt(cfl_target / rate_sq);
}

Params ExperimentConfig::params() const {
    Params p;
    p.a = a;
    p.b = b;
    if (lambda && mu) {
        p.lambda = *lambda;
        p.mu = *mu;
        const double dtx = *lambda * dx(), dty = *mu * dy();
        if (std::abs(dtx - dty) > 1e-9 * std::max(dtx, dty))
            throw ConfigError("config: lambda*dx and mu*dy disagree (" + std::to_string(dtx) +
                              " vs " + std::to_string(dty) + "); one time step must serve both");
    } else {
        const double step = dt();
        p.lambda = step / dx();
        p.mu = step / dy();
    }
    validate(p);
    return p;
}

BoundarySpec ExperimentConfig::boundary() const {
    switch (geometry) {
        case GeomKind::Periodic:
            return BoundarySpec::periodic();
        case GeomKind::HalfSpace:
            return BoundarySpec::half_space(dirichlet_value);
        case GeomKind::QuarterSpace:
            return BoundarySpec::quarter_space(corner_delta, dirichlet_value);
        case GeomKind::Rectangle:
            return BoundarySpec::rectangle(corner_delta, mixed_corner, dirichlet_value);
    }
    throw ConfigError("config: unknown geometry");
}

std::function<double(double, double)> ExperimentConfig::init_fn() const {
    const double cx = ic_center_x > 0.0 ? ic_center_x : Lx / 2.0;
    const double cy = ic_center_y > 0.0 ? ic_center_y : Ly / 2.0;
    switch (init) {
        case InitKind::Gaussian: {
            const double w = ic_width > 0.0 ? ic_width : Lx / 8.0;
            const double inv_w2 = 1.0 / (w * w);
            return [=](double x, double y) {
                const double rx = x - cx, ry = y - cy;
                return std::exp(-(rx * rx + ry * ry) * inv_w2);
            };
        }
        case InitKind::PlaneWave: {
            const double kx = 2.0 * M_PI * ic_mode_x / Lx;
            const double ky = 2.0 * M_PI * ic_mode_y / Ly;
            return [=](double x, double y) { return std::sin(kx * x) * std::sin(ky * y); };
        }
        case InitKind::Impulse: {
            const int j0 = ic_cell_j >= 0 ? ic_cell_j : nx / 2;
            const int k0 = ic_cell_k >= 0 ? ic_cell_k : ny / 2;
            if (j0 >= nx || k0 >= ny) throw ConfigError("config: impulse cell outside the grid");
            const double hx = dx(), hy = dy();
            return [=](double x, double y) {
                const int j = static_cast<int>(x / hx);
                const int k = static_cast<int>(y / hy);
                return (j == j0 && k == k0) ? 1.0 : 0.0;
            };
        }
        case InitKind::File: {
            std::ifstream in(ic_file);
            if (!in) throw ConfigError("config: cannot open ic_file " + ic_file);
            auto values = std::make_shared<std::vector<double>>();
            double v;
            while (in >> v) values->push_back(v);
            if (static_cast<int>(values->size()) != nx * ny)
                throw ConfigError("config: ic_file " + ic_file + " holds " +
                                  std::to_string(values->size()) + " values, expected " +
                                  std::to_string(nx * ny));
            const double hx = dx(), hy = dy();
            const int nxl = nx;
            return [=](double x, double y) {
                const int j = static_cast<int>(x / hx);
                const int k = static_cast<int>(y / hy);
                return (*values)[static_cast<size_t>(k) * nxl + j];
            };
        }
    }
    throw ConfigError("config: unknown ic");
}

std::string ExperimentConfig::resolved_csv_path() const {
    if (output_csv.empty()) return {};
    if (!output_csv.empty() && output_csv.front() == '/') return output_csv;
    std::string dir = output_dir;
    if (const char* env = std::getenv("LW2D_OUTPUT_DIR"); env && *env) dir = env;
    if (dir.empty()) dir = ".";
    if (dir.back() != '/') dir += '/';
    return dir + output_csv;
}

}  // namespace lw2d
