#include "kft/config.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "kft/errors.hpp"

namespace kft {

namespace {

std::string trim(const std::string& s) {
    const auto a = s.find_first_not_of(" \t\r\n");
    if (a == std::string::npos) return "";
    const auto b = s.find_last_not_of(" \t\r\n");
    return s.substr(a, b - a + 1);
}

std::string join(const std::vector<std::string>& parts) {
    std::string out;
    for (size_t i = 0; i < parts.size(); ++i) {
        if (i) out += ",";
        out += parts[i];
    }
    return out;
}

std::vector<std::string> split_list(const std::string& s) {
    std::vector<std::string> out;
    std::istringstream iss(s);
    std::string item;
    while (std::getline(iss, item, ',')) {
        item = trim(item);
        if (!item.empty()) out.push_back(item);
    }
    return out;
}

double to_double(const std::string& key, const std::string& value) {
    try {
        size_t pos = 0;
        const double v = std::stod(value, &pos);
        if (pos != value.size()) throw std::invalid_argument(value);
        return v;
    } catch (const std::exception&) {
        throw DataError(ErrorCode::MalformedLine, "config: bad numeric value for " + key +
                                                      ": \"" + value + "\"");
    }
}

int to_int(const std::string& key, const std::string& value) {
    const double v = to_double(key, value);
    const int i = static_cast<int>(v);
    if (static_cast<double>(i) != v)
        throw DataError(ErrorCode::MalformedLine, "config: " + key + " must be an integer");
    return i;
}

bool to_bool(const std::string& key, const std::string& value) {
    if (value == "true" || value == "1") return true;
    if (value == "false" || value == "0") return false;
    throw DataError(ErrorCode::MalformedLine, "config: " + key + " must be true/false");
}

std::string format_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

}  // namespace

void apply_override(TrackerConfig& c, const std::string& key, const std::string& value) {
    if (key == "lambda") c.lambda = to_double(key, value);
    else if (key == "gamma") c.gamma = to_double(key, value);
    else if (key == "base_score") c.base_score = to_double(key, value);
    else if (key == "stepsize") c.stepsize = to_int(key, value);
    else if (key == "context_patches") c.context_patches = to_int(key, value);
    else if (key == "mu0") c.mu0 = to_double(key, value);
    else if (key == "beta") c.beta = to_double(key, value);
    else if (key == "mu_max") c.mu_max = to_double(key, value);
    else if (key == "admm_iters") c.admm_iters = to_int(key, value);
    else if (key == "cell_size") c.cell_size = to_int(key, value);
    else if (key == "padding") c.padding = to_double(key, value);
    else if (key == "max_cells") c.max_cells = to_int(key, value);
    else if (key == "num_scales") c.num_scales = to_int(key, value);
    else if (key == "scale_step") c.scale_step = to_double(key, value);
    else if (key == "scale_penalty") c.scale_penalty = to_double(key, value);
    else if (key == "learning_rate") c.learning_rate = to_double(key, value);
    else if (key == "output_sigma_factor") c.output_sigma_factor = to_double(key, value);
    else if (key == "window") c.window = to_bool(key, value);
    else if (key == "channels") c.channels = split_list(value);
    else if (key == "color_table") c.color_table = value;
    else
        throw DataError(ErrorCode::MalformedLine, "config: unknown key \"" + key + "\"");
}

TrackerConfig parse_config_text(const std::string& text) {
    TrackerConfig config;
    std::istringstream iss(text);
    std::string line;
    int line_no = 0;
    while (std::getline(iss, line)) {
        ++line_no;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw DataError(ErrorCode::MalformedLine,
                            "config line " + std::to_string(line_no) + ": expected key=value");
        apply_override(config, trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
    }
    return config;
}

TrackerConfig load_config(const std::filesystem::path& file) {
    std::ifstream in(file);
    if (!in) throw DataError(ErrorCode::MissingFile, "cannot open config " + file.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_config_text(ss.str());
}

std::string config_to_text(const TrackerConfig& c) {
    std::ostringstream out;
    out << "lambda=" << format_double(c.lambda) << "\n";
    out << "gamma=" << format_double(c.gamma) << "\n";
    out << "base_score=" << format_double(c.base_score) << "\n";
    out << "stepsize=" << c.stepsize << "\n";
    out << "context_patches=" << c.context_patches << "\n";
    out << "mu0=" << format_double(c.mu0) << "\n";
    out << "beta=" << format_double(c.beta) << "\n";
    out << "mu_max=" << format_double(c.mu_max) << "\n";
    out << "admm_iters=" << c.admm_iters << "\n";
    out << "cell_size=" << c.cell_size << "\n";
    out << "padding=" << format_double(c.padding) << "\n";
    out << "max_cells=" << c.max_cells << "\n";
    out << "num_scales=" << c.num_scales << "\n";
    out << "scale_step=" << format_double(c.scale_step) << "\n";
    out << "scale_penalty=" << format_double(c.scale_penalty) << "\n";
    out << "learning_rate=" << format_double(c.learning_rate) << "\n";
    out << "output_sigma_factor=" << format_double(c.output_sigma_factor) << "\n";
    out << "window=" << (c.window ? "true" : "false") << "\n";
    out << "channels=" << join(c.channels) << "\n";
    if (!c.color_table.empty()) out << "color_table=" << c.color_table << "\n";
    return out.str();
}

}  // namespace kft
