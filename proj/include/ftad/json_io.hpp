#pragma once

#include <cctype>
#include <complex>
#include <cstddef>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "ftad/descent.hpp"
#include "ftad/estermann.hpp"
#include "ftad/gaussian_rational.hpp"
#include "ftad/polynomial.hpp"

namespace ftad {

using json = nlohmann::ordered_json;

inline json to_json(const LemmaReport& report) {
    json j;
    j["k"] = report.k;
    j["zeta_pow"] = {to_string(report.zeta_pow.re()), to_string(report.zeta_pow.im())};
    j["sign_re"] = report.sign_re;
    j["sign_im"] = report.sign_im;
    j["head_value"] = to_string(report.head_value);
    j["head_closed_form"] = to_string(report.head_closed_form);
    j["head_factored_matches"] = report.head_factored_matches;
    j["head_le_closed_form"] = report.head_le_closed_form;
    j["re_pair_signs"] = report.re_pair_signs;
    j["im_pair_signs"] = report.im_pair_signs;
    j["pass"] = report.pass;
    return j;
}

inline json to_json(const std::vector<LemmaReport>& reports) {
    json arr = json::array();
    for (const auto& report : reports) arr.push_back(to_json(report));
    return arr;
}

inline json to_json(const DescentConfig& cfg) {
    json j;
    j["tol_residual"] = cfg.tol_residual;
    j["tau_k_detect"] = cfg.tau_k_detect;
    j["max_iters"] = cfg.max_iters;
    j["max_backtracks"] = cfg.max_backtracks;
    j["step_growth"] = cfg.step_growth;
    j["step_shrink"] = cfg.step_shrink;
    j["sufficient_decrease_sigma"] = cfg.sufficient_decrease_sigma;
    j["restart_attempts"] = cfg.restart_attempts;
    j["seed"] = cfg.seed;
    j["collect_trace"] = cfg.collect_trace;
    return j;
}

inline json roots_to_json(const std::vector<RootResult>& results, const DescentConfig& cfg,
                          bool include_trace) {
    json j;
    json roots = json::array();
    for (const auto& res : results) {
        json r;
        r["re"] = res.root.real();
        r["im"] = res.root.imag();
        r["residual"] = res.residual;
        r["multiplicity"] = res.multiplicity;
        r["iterations"] = res.iterations;
        roots.push_back(std::move(r));
    }
    j["roots"] = std::move(roots);
    j["config"] = to_json(cfg);
    if (include_trace) {
        json trace = json::array();
        for (std::size_t idx = 0; idx < results.size(); ++idx) {
            for (const auto& rec : results[idx].trace) {
                json step;
                step["root_index"] = idx;
                step["attempt"] = rec.attempt;
                step["z"] = {rec.z.real(), rec.z.imag()};
                step["abs2"] = rec.abs2;
                step["zeta"] = {rec.zeta.real(), rec.zeta.imag()};
                step["k"] = rec.k;
                step["r"] = rec.r;
                step["backtracks"] = rec.backtracks;
                trace.push_back(std::move(step));
            }
        }
        j["trace"] = std::move(trace);
    }
    return j;
}

namespace detail {

inline std::complex<double> coeff_entry_to_complex(const json& entry, std::size_t index) {
    auto fail = [&](const char* why) {
        throw std::invalid_argument("polynomial JSON: coeffs[" + std::to_string(index) + "]: " +
                                    why);
    };
    if (!entry.is_array() || entry.size() != 2) fail("expected a [re, im] pair");
    double parts[2];
    for (int c = 0; c < 2; ++c) {
        const json& component = entry[c];
        if (component.is_number()) {
            parts[c] = component.get<double>();
        } else if (component.is_string()) {
            parts[c] = to_double(parse_rational(component.get<std::string>()));
        } else {
            fail("components must be numbers or \"p/q\" strings");
        }
    }
    return {parts[0], parts[1]};
}

} // namespace detail

/// Parses {"coeffs": [[re, im], ...]} (ascending degree); components are
/// numbers, or "p/q" strings which are converted to double.
inline PolyD parse_polynomial_json(const std::string& text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& err) {
        throw std::invalid_argument("polynomial JSON: parse error at byte " +
                                    std::to_string(err.byte) + ": " + err.what());
    }
    if (!doc.is_object() || !doc.contains("coeffs") || !doc["coeffs"].is_array())
        throw std::invalid_argument("polynomial JSON: expected {\"coeffs\": [[re, im], ...]}");
    std::vector<std::complex<double>> coeffs;
    const json& arr = doc["coeffs"];
    coeffs.reserve(arr.size());
    for (std::size_t i = 0; i < arr.size(); ++i)
        coeffs.push_back(detail::coeff_entry_to_complex(arr[i], i));
    return PolyD(std::move(coeffs));
}

/// Exact-mode variant: components must be "p/q" strings.
inline PolyQ parse_polynomial_exact_json(const std::string& text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& err) {
        throw std::invalid_argument("polynomial JSON: parse error at byte " +
                                    std::to_string(err.byte) + ": " + err.what());
    }
    if (!doc.is_object() || !doc.contains("coeffs") || !doc["coeffs"].is_array())
        throw std::invalid_argument("polynomial JSON: expected {\"coeffs\": [[re, im], ...]}");
    std::vector<GaussianRational> coeffs;
    const json& arr = doc["coeffs"];
    for (std::size_t i = 0; i < arr.size(); ++i) {
        const json& entry = arr[i];
        if (!entry.is_array() || entry.size() != 2 || !entry[0].is_string() ||
            !entry[1].is_string())
            throw std::invalid_argument("polynomial JSON: coeffs[" + std::to_string(i) +
                                        "]: exact mode expects [\"p/q\", \"p/q\"]");
        coeffs.emplace_back(parse_rational(entry[0].get<std::string>()),
                            parse_rational(entry[1].get<std::string>()));
    }
    return PolyQ(std::move(coeffs));
}

/// Plain-text form: one "re im" pair per line, ascending degree. Blank
/// lines are skipped; anything else is rejected with its line number.
inline PolyD parse_polynomial_text(const std::string& text) {
    std::vector<std::complex<double>> coeffs;
    std::istringstream in(text);
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        std::istringstream fields(line);
        double re, im;
        if (!(fields >> re))
            throw std::invalid_argument("polynomial text: line " + std::to_string(line_no) +
                                        ": expected \"re im\"");
        if (!(fields >> im))
            throw std::invalid_argument("polynomial text: line " + std::to_string(line_no) +
                                        ": missing imaginary part");
        std::string rest;
        if (fields >> rest)
            throw std::invalid_argument("polynomial text: line " + std::to_string(line_no) +
                                        ": trailing characters '" + rest + "'");
        coeffs.emplace_back(re, im);
    }
    return PolyD(std::move(coeffs));
}

/// JSON when the first non-space character is '{', plain text otherwise.
inline PolyD parse_polynomial_auto(const std::string& text) {
    for (char c : text) {
        if (std::isspace(static_cast<unsigned char>(c))) continue;
        return c == '{' ? parse_polynomial_json(text) : parse_polynomial_text(text);
    }
    throw std::invalid_argument("polynomial input is empty");
}

inline json polynomial_to_json(const PolyD& p) {
    json j;
    json coeffs = json::array();
    for (const auto& c : p.coeffs()) coeffs.push_back({c.real(), c.imag()});
    j["coeffs"] = std::move(coeffs);
    return j;
}

inline json polynomial_to_json(const PolyQ& p) {
    json j;
    json coeffs = json::array();
    for (const auto& c : p.coeffs()) coeffs.push_back({to_string(c.re()), to_string(c.im())});
    j["coeffs"] = std::move(coeffs);
    return j;
}

/// Applies one "key=value" override onto cfg; returns false for unknown keys.
inline bool apply_config_override(DescentConfig& cfg, std::string_view key,
                                  const std::string& value) {
    try {
        if (key == "tol_residual") cfg.tol_residual = std::stod(value);
        else if (key == "tau_k_detect") cfg.tau_k_detect = std::stod(value);
        else if (key == "max_iters") cfg.max_iters = std::stoi(value);
        else if (key == "max_backtracks") cfg.max_backtracks = std::stoi(value);
        else if (key == "step_growth") cfg.step_growth = std::stod(value);
        else if (key == "step_shrink") cfg.step_shrink = std::stod(value);
        else if (key == "sufficient_decrease_sigma") cfg.sufficient_decrease_sigma = std::stod(value);
        else if (key == "restart_attempts") cfg.restart_attempts = std::stoi(value);
        else if (key == "seed") cfg.seed = std::stoul(value);
        else if (key == "collect_trace") {
            if (value != "0" && value != "1" && value != "true" && value != "false")
                throw std::invalid_argument("collect_trace must be 0/1/true/false");
            cfg.collect_trace = value == "1" || value == "true";
        }
        else return false;
    } catch (const std::exception&) {
        throw std::invalid_argument("config override " + std::string(key) + "=" + value +
                                    ": malformed value");
    }
    return true;
}

} // namespace ftad
