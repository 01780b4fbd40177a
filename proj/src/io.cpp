#include "hellylab/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>

namespace hellylab {

const char* const kToolVersion = "hellylab 0.1.0";

double round_sig(double value, int digits) {
    if (!std::isfinite(value)) return value;
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.*g", digits, value);
    return std::strtod(buf, nullptr);
}

json json_number(double value) { return json(round_sig(value)); }

json class_to_json(const ConceptClass& cls) {
    json domain = json::array();
    for (const auto& p : cls.domain()) {
        json jp;
        jp["id"] = p.id;
        if (!p.coords.empty()) {
            json coords = json::array();
            for (double c : p.coords) coords.push_back(json_number(c));
            jp["coords"] = coords;
        }
        domain.push_back(jp);
    }
    json hyps = json::array();
    for (int h = 0; h < cls.size(); ++h) {
        json row = json::array();
        for (Label y : cls.row(h)) row.push_back(int(y));
        hyps.push_back(row);
    }
    return json{{"domain", domain}, {"hypotheses", hyps}};
}

ConceptClass class_from_json(const json& j) {
    require(j.is_object() && j.contains("domain") && j.contains("hypotheses"),
            errc::validation, "class file must contain 'domain' and 'hypotheses'");
    std::vector<DomainPoint> domain;
    for (const auto& jp : j.at("domain")) {
        DomainPoint p;
        p.id = jp.at("id").get<std::string>();
        if (jp.contains("coords"))
            for (const auto& c : jp.at("coords"))
                p.coords.push_back(c.get<double>());
        domain.push_back(std::move(p));
    }
    std::vector<std::vector<Label>> rows;
    for (const auto& jr : j.at("hypotheses")) {
        std::vector<Label> row;
        for (const auto& y : jr) {
            require(y.is_number_integer(), errc::validation,
                    "labels must be the integers -1 and 1");
            long long v = y.get<long long>();
            require(v == 1 || v == -1, errc::validation,
                    "labels must be the integers -1 and 1");
            row.push_back(Label(v));
        }
        rows.push_back(std::move(row));
    }
    return ConceptClass(std::move(domain), std::move(rows));
}

json load_json(const std::string& path) {
    std::ifstream in(path);
    require(bool(in), errc::validation, "cannot open file: " + path);
    json j;
    try {
        in >> j;
    } catch (const std::exception& e) {
        fail(errc::validation, "invalid JSON in " + path + ": " + e.what());
    }
    return j;
}

ConceptClass load_class(const std::string& path) {
    return class_from_json(load_json(path));
}

void save_json(const json& j, const std::string& path) {
    std::ofstream out(path);
    require(bool(out), errc::validation, "cannot write file: " + path);
    out << j.dump(2) << "\n";
}

json sample_to_json(const LabeledSample& sample) {
    json entries = json::array();
    for (const auto& e : sample)
        entries.push_back(json::array({e.point, int(e.label)}));
    return json{{"entries", entries}};
}

LabeledSample sample_from_json(const json& j) {
    require(j.is_object() && j.contains("entries"), errc::validation,
            "sample file must contain 'entries'");
    LabeledSample s;
    for (const auto& je : j.at("entries")) {
        require(je.is_array() && je.size() == 2, errc::validation,
                "sample entries must be [point_index, label] pairs");
        long long label = je.at(1).get<long long>();
        require(label == 1 || label == -1, errc::validation,
                "labels must be the integers -1 and 1");
        s.push_back({je.at(0).get<int>(), Label(label)});
    }
    return s;
}

json report_to_json(const ParameterReport& report) {
    json j;
    j["vc"] = report.vc;
    if (report.star.cap_exceeded) {
        j["star"] = json{{"cap_exceeded", true}, {"cap", report.star.cap}};
    } else {
        j["star"] = report.star.value;
    }
    j["hollow_star"] = report.hollow_star;
    j["dual_helly"] = report.dual_helly;
    j["realizes_all_labelings"] = report.realizes_all_labelings;
    json proj;
    proj["certified_k"] = report.projection.certified_k;
    proj["budget"] = report.projection.budget;
    if (report.projection.refuted_k) {
        proj["refuted_k"] = *report.projection.refuted_k;
        proj["refuted_witness"] = report.projection.refuted_witness;
    }
    j["projection_status"] = proj;
    return j;
}

json wilson_to_json(const WilsonInterval& w) {
    return json{{"lo", json_number(w.lo)}, {"hi", json_number(w.hi)}};
}

json experiment_result_to_json(const ExperimentResult& result) {
    json j;
    j["trials"] = result.trials;
    j["failure_rate"] = json_number(result.failure_rate);
    j["wilson_95"] = wilson_to_json(result.wilson);
    json q = json::object();
    for (const auto& [quant, value] : result.error_quantiles) {
        char key[16];
        std::snprintf(key, sizeof(key), "%.2f", quant);
        q[key] = json_number(value);
    }
    j["error_quantiles"] = q;
    return j;
}

std::string file_digest(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    require(bool(in), errc::validation, "cannot open file for digest: " + path);
    std::uint64_t h = 0xcbf29ce484222325ULL;
    char buf[4096];
    while (in.read(buf, sizeof(buf)) || in.gcount() > 0) {
        for (std::streamsize i = 0; i < in.gcount(); ++i) {
            h ^= std::uint8_t(buf[i]);
            h *= 0x100000001b3ULL;
        }
        if (!in) break;
    }
    char out[32];
    std::snprintf(out, sizeof(out), "fnv1a64:%016llx",
                  static_cast<unsigned long long>(h));
    return out;
}

json manifest_to_json(const RunManifest& manifest) {
    json digests = json::object();
    for (const auto& [path, digest] : manifest.input_digests)
        digests[path] = digest;
    return json{{"command_line", manifest.command_line},
                {"master_seed", manifest.master_seed},
                {"tool_version", manifest.tool_version},
                {"input_digests", digests},
                {"duration_seconds", round_sig(manifest.duration_seconds, 6)}};
}

}  // namespace hellylab
