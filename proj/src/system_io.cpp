#include "rsiss/system_io.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

#include "rsiss/certificates.hpp"

namespace rsiss {

using nlohmann::json;

namespace {

Complex parse_complex(const json& j) {
    if (j.is_number())
        return {j.get<double>(), 0.0};
    if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number())
        return {j[0].get<double>(), j[1].get<double>()};
    throw InputError("expected a number or [re, im], got " + j.dump());
}

json complex_json(Complex z) { return json::array({z.real(), z.imag()}); }

const json& required(const json& j, const char* key) {
    if (!j.contains(key))
        throw InputError(std::string("system file is missing field '") + key + "'");
    return j.at(key);
}

Eigen::MatrixXcd parse_channels(const json& j, const char* key, Eigen::Index modes, int m) {
    const json& arr = required(j, key);
    if (!arr.is_array() || static_cast<int>(arr.size()) != m)
        throw InputError(std::string("'") + key + "' must hold one array per channel");
    Eigen::MatrixXcd out(modes, m);
    for (int k = 0; k < m; ++k) {
        const json& col = arr[static_cast<std::size_t>(k)];
        if (!col.is_array() || static_cast<Eigen::Index>(col.size()) != modes)
            throw InputError(std::string("'") + key + "' channel length must match the eigenvalue count");
        for (Eigen::Index n = 0; n < modes; ++n)
            out(n, k) = parse_complex(col[static_cast<std::size_t>(n)]);
    }
    return out;
}

json channels_json(const Eigen::MatrixXcd& mat) {
    json arr = json::array();
    for (Eigen::Index k = 0; k < mat.cols(); ++k) {
        json col = json::array();
        for (Eigen::Index n = 0; n < mat.rows(); ++n)
            col.push_back(complex_json(mat(n, k)));
        arr.push_back(std::move(col));
    }
    return arr;
}

std::optional<Eigen::VectorXd> parse_norms(const json& j, const char* key) {
    if (!j.contains(key))
        return std::nullopt;
    const auto values = j.at(key).get<std::vector<double>>();
    return Eigen::Map<const Eigen::VectorXd>(values.data(), static_cast<Eigen::Index>(values.size()));
}

}  // namespace

SystemDefinition system_from_json_text(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw InputError(std::string("system file is not valid JSON: ") + e.what());
    }
    try {
        SystemDefinition sys;
        sys.name = j.value("name", std::string("generic"));
        const json& ev = required(j, "eigenvalues");
        sys.spectrum.eigenvalues.resize(static_cast<Eigen::Index>(ev.size()));
        for (std::size_t i = 0; i < ev.size(); ++i)
            sys.spectrum.eigenvalues[static_cast<Eigen::Index>(i)] = parse_complex(ev[i]);
        if (j.contains("tail_bound") && !j.at("tail_bound").is_null())
            sys.spectrum.declared_tail_bound = j.at("tail_bound").get<double>();
        sys.m = required(j, "m").get<int>();
        if (sys.m < 1)
            throw InputError("'m' must be positive");
        sys.c_E = required(j, "c_E").get<double>();
        sys.riesz = RieszBounds(required(j, "m_R").get<double>(), required(j, "M_R").get<double>());
        const Eigen::Index n = sys.modes();
        sys.b = parse_channels(j, "b", n, sys.m);
        sys.a = j.contains("a") ? parse_channels(j, "a", n, sys.m) : Eigen::MatrixXcd::Zero(n, sys.m);

        if (j.contains("gram_blocks")) {
            for (const json& jb : j.at("gram_blocks")) {
                GramBlock block;
                block.modes = required(jb, "modes").get<std::vector<Eigen::Index>>();
                const json& G = required(jb, "G");
                const auto size = static_cast<Eigen::Index>(block.modes.size());
                if (static_cast<Eigen::Index>(G.size()) != size)
                    throw InputError("Gram block row count does not match its mode list");
                block.G.resize(size, size);
                for (Eigen::Index r = 0; r < size; ++r) {
                    const json& row = G[static_cast<std::size_t>(r)];
                    if (static_cast<Eigen::Index>(row.size()) != size)
                        throw InputError("Gram block must be square");
                    for (Eigen::Index c = 0; c < size; ++c)
                        block.G(r, c) = parse_complex(row[static_cast<std::size_t>(c)]);
                }
                sys.gram.blocks.push_back(std::move(block));
            }
        } else {
            sys.gram = GramData::identity(n);
        }
        sys.lift_norms = parse_norms(j, "lift_norms");
        sys.stationary_norms = parse_norms(j, "stationary_norms");
        if (j.contains("ab_norm"))
            sys.ab_norm = j.at("ab_norm").get<double>();
        sys.validate();

        // admissible when the eigenvalue constraints hold or the relaxed sum settles
        if (!check_constraints(sys.spectrum).passes) {
            try {
                certificate_relaxed(sys);
            } catch (const CertificateUnavailable& e) {
                throw InputError(std::string("system is not admissible: ") + e.what());
            }
        }
        return sys;
    } catch (const json::exception& e) {
        throw InputError(std::string("malformed system file: ") + e.what());
    } catch (const DomainError& e) {
        throw InputError(std::string("invalid system data: ") + e.what());
    }
}

SystemDefinition load_system(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in)
        throw InputError("cannot open system file " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return system_from_json_text(ss.str());
}

std::string system_to_json_text(const SystemDefinition& system) {
    json j;
    j["name"] = system.name;
    json ev = json::array();
    for (Eigen::Index i = 0; i < system.modes(); ++i)
        ev.push_back(complex_json(system.spectrum.eigenvalues[i]));
    j["eigenvalues"] = std::move(ev);
    if (system.spectrum.declared_tail_bound)
        j["tail_bound"] = *system.spectrum.declared_tail_bound;
    j["b"] = channels_json(system.b);
    j["a"] = channels_json(system.a);
    json blocks = json::array();
    for (const GramBlock& block : system.gram.blocks) {
        json G = json::array();
        for (Eigen::Index r = 0; r < block.G.rows(); ++r) {
            json row = json::array();
            for (Eigen::Index c = 0; c < block.G.cols(); ++c)
                row.push_back(complex_json(block.G(r, c)));
            G.push_back(std::move(row));
        }
        blocks.push_back({{"modes", block.modes}, {"G", std::move(G)}});
    }
    j["gram_blocks"] = std::move(blocks);
    j["m_R"] = system.riesz.m_R;
    j["M_R"] = system.riesz.M_R;
    j["m"] = system.m;
    j["c_E"] = system.c_E;
    auto norms_json = [](const Eigen::VectorXd& v) { return std::vector<double>(v.data(), v.data() + v.size()); };
    if (system.lift_norms)
        j["lift_norms"] = norms_json(*system.lift_norms);
    if (system.stationary_norms)
        j["stationary_norms"] = norms_json(*system.stationary_norms);
    if (system.ab_norm)
        j["ab_norm"] = *system.ab_norm;
    return j.dump(2);
}

void save_system(const SystemDefinition& system, const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out)
        throw InputError("cannot write " + path.string());
    out << system_to_json_text(system) << '\n';
}

}  // namespace rsiss
