#pragma once

#include <iomanip>
#include <ostream>
#include <string>

#include "json.hpp"

#include "extk/meanwidth.hpp"
#include "extk/spectra.hpp"
#include "extk/version.hpp"
#include "extk/witness.hpp"

namespace extk {

using Json = nlohmann::ordered_json;

/*
 * JSON and CSV serialization for experiment reports. Every JSON document
 * carries schema version, tool version, the command name, and the full
 * configuration (including the seed) that produced it. Key order is fixed so
 * identical runs emit byte-identical output.
 */

inline Json report_envelope(const std::string& command, Json config) {
    Json j;
    j["schema"] = 1;
    j["version"] = version_string;
    j["command"] = command;
    j["config"] = std::move(config);
    return j;
}

inline Json to_json(const WilsonInterval& w) {
    Json j;
    j["lo"] = w.lo;
    j["hi"] = w.hi;
    return j;
}

inline Json to_json(const WitnessReport& r) {
    Json config;
    config["d"] = r.d;
    config["k"] = r.k;
    config["c"] = r.c;
    config["s"] = r.s;
    config["reps"] = r.repetitions;
    config["seed"] = r.seed;
    Json j = report_envelope("witness", std::move(config));
    j["purity_mean"] = r.purity_mean;
    j["purity_se"] = r.purity_se;
    j["witness_mean"] = r.witness_mean;
    j["witness_se"] = r.witness_se;
    j["purity_pred"] = r.purity_pred;
    j["witness_pred"] = r.witness_pred;
    j["detected_count"] = r.detected_count;
    j["detection_rate"] = r.detection_rate;
    j["rate_ci"] = to_json(r.rate_ci);
    j["purity_per_rep"] = r.purity_per_rep;
    j["witness_per_rep"] = r.witness_per_rep;
    j["detected_per_rep"] = r.detected_per_rep;
    return j;
}

inline void write_csv(const WitnessReport& r, std::ostream& os) {
    os << std::setprecision(17) << "rep,purity,witness,detected\n";
    for (std::size_t i = 0; i < r.purity_per_rep.size(); ++i)
        os << i << ',' << r.purity_per_rep[i] << ',' << r.witness_per_rep[i] << ','
           << r.detected_per_rep[i] << '\n';
}

inline Json to_json(const ThresholdReport& r) {
    Json config;
    config["d"] = r.d;
    config["k"] = r.k;
    config["c_grid"] = r.c_grid;
    config["reps"] = r.repetitions;
    config["seed"] = r.seed;
    Json j = report_envelope("threshold", std::move(config));
    Json cs;
    cs["num"] = boost::multiprecision::numerator(r.c_star_exact).str();
    cs["den"] = boost::multiprecision::denominator(r.c_star_exact).str();
    j["c_star_exact"] = std::move(cs);
    j["c_star_value"] = static_cast<double>(r.c_star_exact);
    Json cells = Json::array();
    for (const auto& cell : r.cells) {
        Json c;
        c["c"] = cell.c;
        c["s"] = cell.s;
        c["detection_rate"] = cell.detection_rate;
        c["rate_ci"] = to_json(cell.rate_ci);
        c["purity_mean"] = cell.purity_mean;
        c["witness_mean"] = cell.witness_mean;
        cells.push_back(std::move(c));
    }
    j["cells"] = std::move(cells);
    return j;
}

inline void write_csv(const ThresholdReport& r, std::ostream& os) {
    os << std::setprecision(17) << "c,rep,purity,witness,detected\n";
    for (const auto& cell : r.cells)
        for (std::size_t i = 0; i < cell.purity_per_rep.size(); ++i)
            os << cell.c << ',' << i << ',' << cell.purity_per_rep[i] << ','
               << cell.witness_per_rep[i] << ',' << cell.detected_per_rep[i] << '\n';
}

inline Json to_json(const MeanWidthReport& r) {
    Json config;
    config["mode"] = width_mode_name(r.mode);
    config["d_A"] = r.d_A;
    config["d_B"] = r.d_B;
    config["k"] = r.k;
    config["reps"] = r.repetitions;
    config["seed"] = r.seed;
    Json j = report_envelope("meanwidth", std::move(config));
    j["estimate"] = r.estimate;
    j["se"] = r.se;
    j["prediction"] = r.prediction;
    j["ratio"] = r.ratio;
    j["value_per_rep"] = r.value_per_rep;
    return j;
}

inline void write_csv(const MeanWidthReport& r, std::ostream& os) {
    os << std::setprecision(17) << "rep,value\n";
    for (std::size_t i = 0; i < r.value_per_rep.size(); ++i)
        os << i << ',' << r.value_per_rep[i] << '\n';
}

inline Json to_json(const VarianceDecayReport& r) {
    Json config;
    config["d_list"] = r.d_list;
    config["k"] = r.k;
    config["p"] = r.p;
    config["c"] = r.c;
    config["reps"] = r.repetitions;
    config["seed"] = r.seed;
    Json j = report_envelope("variance_decay", std::move(config));
    j["moment_mean"] = r.moment_mean;
    j["moment_variance"] = r.moment_variance;
    j["variance_ratio"] = r.variance_ratio;
    j["predicted_ratio"] = r.predicted_ratio;
    return j;
}

inline void write_csv(const VarianceDecayReport& r, std::ostream& os) {
    os << std::setprecision(17) << "d,rep,moment\n";
    for (std::size_t di = 0; di < r.d_list.size(); ++di)
        for (std::size_t i = 0; i < r.moment_per_rep[di].size(); ++i)
            os << r.d_list[di] << ',' << i << ',' << r.moment_per_rep[di][i] << '\n';
}

} // namespace extk
