// SPDX-License-Identifier: Apache-2.0
//
// ambientsim - mmWave ambient perception and channel reconstruction simulator
// Copyright (C) 2026 The ambientsim authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#include "ambient/config.hpp"

#include "ambient/errors.hpp"

#include <cmath>
#include <fstream>
#include <functional>
#include <iomanip>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>

namespace ambient
{
namespace
{

std::string trim(const std::string& s)
{
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string::npos)
        return {};
    return s.substr(first, s.find_last_not_of(" \t\r") - first + 1);
}

template <typename T>
T to_number(const std::string& text, const std::string& key)
{
    std::istringstream in(text);
    T value{};
    in >> value;
    if (!in || !(in >> std::ws).eof())
        throw ConfigError("config key '" + key + "': cannot parse '" + text + "'");
    return value;
}

template <typename T>
std::vector<T> to_list(const std::string& text, const std::string& key)
{
    std::vector<T> out;
    std::stringstream in(text);
    for (std::string item; std::getline(in, item, ',');)
        out.push_back(to_number<T>(trim(item), key));
    if (out.empty())
        throw ConfigError("config key '" + key + "': empty list");
    return out;
}

bool to_bool(const std::string& text, const std::string& key)
{
    if (text == "1" || text == "true")
        return true;
    if (text == "0" || text == "false")
        return false;
    throw ConfigError("config key '" + key + "': expected true/false");
}

template <typename T>
std::string join(const std::vector<T>& values)
{
    std::ostringstream out;
    out << std::setprecision(17);
    for (std::size_t i = 0; i < values.size(); ++i)
        out << (i ? "," : "") << values[i];
    return out.str();
}

} // namespace

std::string scheme_name(Scheme s)
{
    switch (s)
    {
    case Scheme::ApCr:
        return "AP-CR";
    case Scheme::ApCrf:
        return "AP-CRF";
    case Scheme::ICr:
        return "I-CR";
    }
    return "?";
}

Scheme parse_scheme(const std::string& name)
{
    if (name == "AP-CR")
        return Scheme::ApCr;
    if (name == "AP-CRF")
        return Scheme::ApCrf;
    if (name == "I-CR")
        return Scheme::ICr;
    throw ConfigError("unknown scheme '" + name + "'");
}

void ExperimentConfig::validate() const
{
    scene.validate();
    fmcw.validate();
    auto positive = [](double v, const char* what) {
        if (!(v > 0.0))
            throw ConfigError(std::string(what) + " must be positive");
    };
    positive(bandwidth, "bandwidth_hz");
    positive(tx_power, "tx_power");
    positive(zeta, "zeta");
    positive(orthogonality_eps, "orthogonality_eps");
    if (!(eta > 0.0 && eta < 1.0))
        throw ConfigError("eta must lie in (0, 1)");
    if (beams.empty() || antennas.empty() || sigma_e_sq.empty() || schemes.empty() || snr_db.empty())
        throw ConfigError("sweep lists must not be empty");
    for (int k : beams)
        if (k < 3)
            throw ConfigError("beams entries must be >= 3");
    for (int n : antennas)
        if (n < 1)
            throw ConfigError("antennas entries must be >= 1");
    for (double s : sigma_e_sq)
        if (!(s >= 0.0))
            throw ConfigError("sigma_e_sq entries must be >= 0");
    for (double s : snr_db)
        if (!std::isfinite(s))
            throw ConfigError("snr_db entries must be finite");
    if (num_ues < 1 || ue_antennas < 1)
        throw ConfigError("num_ues and ue_antennas must be >= 1");
    if (trials < 1)
        throw ConfigError("trials must be >= 1");
    if (threads < 0)
        throw ConfigError("threads must be >= 0");
}

ExperimentConfig parse_config(std::istream& in, const std::filesystem::path& base_dir)
{
    ExperimentConfig cfg;
    std::vector<Material> inline_materials;
    double declared_wavelength = 0.0;

    using Setter = std::function<void(const std::string&, const std::string&)>;
    auto num = [](double& target) -> Setter {
        return [&target](const std::string& v, const std::string& k) { target = to_number<double>(v, k); };
    };
    auto integer = [](int& target) -> Setter {
        return [&target](const std::string& v, const std::string& k) { target = to_number<int>(v, k); };
    };

    const std::map<std::string, Setter> setters{
        {"room_length", num(cfg.scene.room_length)},
        {"room_width", num(cfg.scene.room_width)},
        {"ap_from_left", num(cfg.scene.ap_from_left)},
        {"ap_from_bottom", num(cfg.scene.ap_from_bottom)},
        {"lambda_ppp", num(cfg.scene.lambda_ppp)},
        {"max_object_length", num(cfg.scene.max_object_length)},
        {"max_object_width", num(cfg.scene.max_object_width)},
        {"ap_clearance", num(cfg.scene.ap_clearance)},
        {"wall_material", integer(cfg.scene.wall_material)},
        {"object_materials",
         [&](const std::string& v, const std::string& k) { cfg.scene.object_materials = to_list<int>(v, k); }},
        {"material",
         [&](const std::string& v, const std::string& k) {
             std::istringstream fields(v);
             Material m;
             if (!(fields >> m.index >> m.specular >> m.diffuse >> m.phase) || !(fields >> std::ws).eof())
                 throw ConfigError("config key '" + k + "': expected 'index Rs Rd Phi'");
             inline_materials.push_back(m);
         }},
        {"material_table",
         [&](const std::string& v, const std::string&) {
             std::filesystem::path p(v);
             if (p.is_relative())
                 p = base_dir / p;
             std::ifstream file(p);
             if (!file)
                 throw ConfigError("cannot open material table " + p.string());
             cfg.scene.materials = MaterialTable::read(file);
         }},
        {"carrier_hz", num(cfg.fmcw.carrier)},
        {"wavelength_m", num(declared_wavelength)},
        {"chirp_rate_hz_per_s", num(cfg.fmcw.chirp_rate)},
        {"chirp_duration_s", num(cfg.fmcw.chirp_duration)},
        {"bandwidth_hz", num(cfg.bandwidth)},
        {"beams", [&](const std::string& v, const std::string& k) { cfg.beams = to_list<int>(v, k); }},
        {"antennas", [&](const std::string& v, const std::string& k) { cfg.antennas = to_list<int>(v, k); }},
        {"eta", num(cfg.eta)},
        {"zeta", num(cfg.zeta)},
        {"num_ues", integer(cfg.num_ues)},
        {"ue_antennas", integer(cfg.ue_antennas)},
        {"sigma_e_sq", [&](const std::string& v, const std::string& k) { cfg.sigma_e_sq = to_list<double>(v, k); }},
        {"tx_power",
         [&](const std::string& v, const std::string& k) {
             cfg.tx_power = to_number<double>(v, k);
             cfg.fmcw.tx_power = cfg.tx_power;
         }},
        {"schemes",
         [&](const std::string& v, const std::string&) {
             cfg.schemes.clear();
             std::stringstream list(v);
             for (std::string item; std::getline(list, item, ',');)
                 cfg.schemes.push_back(parse_scheme(trim(item)));
         }},
        {"snr_db", [&](const std::string& v, const std::string& k) { cfg.snr_db = to_list<double>(v, k); }},
        {"trials", integer(cfg.trials)},
        {"seed", [&](const std::string& v, const std::string& k) { cfg.seed = to_number<std::uint64_t>(v, k); }},
        {"threads", integer(cfg.threads)},
        {"orthogonality_eps", num(cfg.orthogonality_eps)},
        {"least_squares", [&](const std::string& v, const std::string& k) { cfg.least_squares = to_bool(v, k); }},
    };

    std::string line;
    int line_no = 0;
    while (std::getline(in, line))
    {
        ++line_no;
        const std::string body = trim(line.substr(0, line.find('#')));
        if (body.empty())
            continue;
        const auto eq = body.find('=');
        if (eq == std::string::npos)
            throw ConfigError("config line " + std::to_string(line_no) + ": expected key=value");
        const std::string key = trim(body.substr(0, eq));
        const auto it = setters.find(key);
        if (it == setters.end())
            throw ConfigError("config line " + std::to_string(line_no) + ": unknown key '" + key + "'");
        it->second(trim(body.substr(eq + 1)), key);
    }

    if (!inline_materials.empty())
        cfg.scene.materials = MaterialTable(inline_materials);
    if (declared_wavelength != 0.0 &&
        std::abs(declared_wavelength - cfg.wavelength()) > 1e-3 * cfg.wavelength())
        throw ConfigError("wavelength_m is inconsistent with c / carrier_hz");
    cfg.validate();
    return cfg;
}

ExperimentConfig load_config(const std::filesystem::path& path)
{
    std::ifstream file(path);
    if (!file)
        throw ConfigError("cannot open config file " + path.string());
    return parse_config(file, path.parent_path());
}

void write_config(std::ostream& out, const ExperimentConfig& cfg)
{
    std::vector<std::string> schemes;
    for (Scheme s : cfg.schemes)
        schemes.push_back(scheme_name(s));
    out << std::setprecision(17);
    out << "room_length=" << cfg.scene.room_length << '\n'
        << "room_width=" << cfg.scene.room_width << '\n'
        << "ap_from_left=" << cfg.scene.ap_from_left << '\n'
        << "ap_from_bottom=" << cfg.scene.ap_from_bottom << '\n'
        << "lambda_ppp=" << cfg.scene.lambda_ppp << '\n'
        << "max_object_length=" << cfg.scene.max_object_length << '\n'
        << "max_object_width=" << cfg.scene.max_object_width << '\n'
        << "ap_clearance=" << cfg.scene.ap_clearance << '\n'
        << "wall_material=" << cfg.scene.wall_material << '\n'
        << "object_materials=" << join(cfg.scene.object_materials) << '\n';
    for (const auto& m : cfg.scene.materials.rows())
        out << "material=" << m.index << ' ' << m.specular << ' ' << m.diffuse << ' ' << m.phase << '\n';
    out << "carrier_hz=" << cfg.fmcw.carrier << '\n'
        << "chirp_rate_hz_per_s=" << cfg.fmcw.chirp_rate << '\n'
        << "chirp_duration_s=" << cfg.fmcw.chirp_duration << '\n'
        << "bandwidth_hz=" << cfg.bandwidth << '\n'
        << "beams=" << join(cfg.beams) << '\n'
        << "antennas=" << join(cfg.antennas) << '\n'
        << "eta=" << cfg.eta << '\n'
        << "zeta=" << cfg.zeta << '\n'
        << "num_ues=" << cfg.num_ues << '\n'
        << "ue_antennas=" << cfg.ue_antennas << '\n'
        << "sigma_e_sq=" << join(cfg.sigma_e_sq) << '\n'
        << "tx_power=" << cfg.tx_power << '\n'
        << "schemes=" << join(schemes) << '\n'
        << "snr_db=" << join(cfg.snr_db) << '\n'
        << "trials=" << cfg.trials << '\n'
        << "seed=" << cfg.seed << '\n'
        << "threads=" << cfg.threads << '\n'
        << "orthogonality_eps=" << cfg.orthogonality_eps << '\n'
        << "least_squares=" << (cfg.least_squares ? "true" : "false") << '\n';
}

} // namespace ambient
