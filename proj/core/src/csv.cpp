#include "nomasim/csv.hpp"

#include <charconv>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <system_error>

namespace nomasim::csv {

namespace {

constexpr char kSweepHeader[] = "sweep_var,value,metric,analytic,empirical,stderr,trials,seed";

std::vector<std::string> split_fields(const std::string& line) {
    std::vector<std::string> fields;
    std::size_t start = 0;
    while (true) {
        const std::size_t comma = line.find(',', start);
        if (comma == std::string::npos) {
            fields.push_back(line.substr(start));
            break;
        }
        fields.push_back(line.substr(start, comma - start));
        start = comma + 1;
    }
    return fields;
}

std::uint64_t parse_u64(const std::string& text) {
    std::uint64_t v = 0;
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
    if (ec != std::errc{} || ptr != text.data() + text.size())
        throw std::invalid_argument("bad unsigned integer field: " + text);
    return v;
}

}  // namespace

std::string format_double(double v) {
    char buf[64];
    const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    if (ec != std::errc{}) throw std::runtime_error("double formatting failed");
    return std::string(buf, ptr);
}

double parse_double(const std::string& text) {
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
    if (ec != std::errc{} || ptr != text.data() + text.size())
        throw std::invalid_argument("bad floating-point field: " + text);
    return v;
}

void write_sweep_csv(std::ostream& out, const std::vector<SweepRow>& rows) {
    out << kSweepHeader << '\n';
    for (const auto& r : rows) {
        if (r.sweep_var.find(',') != std::string::npos || r.metric.find(',') != std::string::npos)
            throw std::invalid_argument("field names may not contain commas");
        out << r.sweep_var << ',' << format_double(r.value) << ',' << r.metric << ','
            << format_double(r.analytic) << ',' << format_double(r.empirical) << ','
            << format_double(r.std_error) << ',' << r.trials << ',' << r.seed << '\n';
    }
}

std::vector<SweepRow> read_sweep_csv(std::istream& in) {
    std::string line;
    if (!std::getline(in, line)) throw std::invalid_argument("empty sweep CSV");
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line != kSweepHeader) throw std::invalid_argument("unrecognized sweep CSV header: " + line);

    std::vector<SweepRow> rows;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        const auto f = split_fields(line);
        if (f.size() != 8) throw std::invalid_argument("sweep CSV row has wrong field count: " + line);
        SweepRow r;
        r.sweep_var = f[0];
        r.value = parse_double(f[1]);
        r.metric = f[2];
        r.analytic = parse_double(f[3]);
        r.empirical = parse_double(f[4]);
        r.std_error = parse_double(f[5]);
        r.trials = parse_u64(f[6]);
        r.seed = parse_u64(f[7]);
        rows.push_back(std::move(r));
    }
    return rows;
}

void write_trajectory_csv(std::ostream& out, int user_id,
                          const std::vector<mobility::MobileState>& samples, double sample_interval) {
    out << "user_id,k,t_seconds,x,y,vx,vy\n";
    for (std::size_t k = 0; k < samples.size(); ++k) {
        const auto& s = samples[k];
        out << user_id << ',' << k << ',' << format_double(static_cast<double>(k) * sample_interval)
            << ',' << format_double(s.x) << ',' << format_double(s.y) << ','
            << format_double(s.vx) << ',' << format_double(s.vy) << '\n';
    }
}

void write_estimate_csv(std::ostream& out, int user_id, const std::vector<tracking::TrackPoint>& points) {
    out << "user_id,k,x_hat,y_hat,d_hat,trace_P,measured\n";
    for (std::size_t k = 0; k < points.size(); ++k) {
        const auto& p = points[k];
        out << user_id << ',' << k << ',' << format_double(p.x_hat) << ',' << format_double(p.y_hat)
            << ',' << format_double(p.d_hat) << ',' << format_double(p.trace_p) << ','
            << (p.measured ? 1 : 0) << '\n';
    }
}

}  // namespace nomasim::csv
