#include "io.hpp"

#include "ballcover/errors.hpp"

#include <openssl/evp.h>

#include <cmath>
#include <fstream>
#include <iomanip>
#include <sstream>

namespace ballcover::io {
namespace {

[[noreturn]] void bad(const std::string& what) { throw ParseError(what); }

double number(const json& j, const std::string& what) {
    if (!j.is_number()) bad(what + ": expected a number");
    return j.get<double>();
}

}  // namespace

json read_json_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) bad("cannot open " + path.string());
    try {
        return json::parse(in);
    } catch (const json::parse_error& e) {
        bad(path.string() + ": " + e.what());
    }
}

void write_text_file(const std::filesystem::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw PreconditionError("cannot write " + path.string());
    out << text;
}

Vector parse_vector(const std::string& text) {
    std::vector<double> vals;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        std::size_t used = 0;
        double v = 0.0;
        try {
            v = std::stod(item, &used);
        } catch (const std::exception&) {
            bad("not a number in vector '" + text + "': '" + item + "'");
        }
        if (item.find_first_not_of(" \t", used) != std::string::npos) bad("trailing characters in '" + item + "'");
        if (!std::isfinite(v)) bad("non-finite entry in vector '" + text + "'");
        vals.push_back(v);
    }
    if (vals.empty() || (!text.empty() && text.back() == ',')) bad("malformed vector '" + text + "'");
    return Eigen::Map<const Vector>(vals.data(), static_cast<Eigen::Index>(vals.size()));
}

json vector_to_json(const VectorRef& v) {
    json a = json::array();
    for (Eigen::Index i = 0; i < v.size(); ++i) a.push_back(v[i]);
    return a;
}

Vector vector_from_json(const json& j, const std::string& what) {
    if (!j.is_array() || j.empty()) bad(what + ": expected a nonempty array of numbers");
    Vector v(static_cast<Eigen::Index>(j.size()));
    for (std::size_t i = 0; i < j.size(); ++i) v[static_cast<Eigen::Index>(i)] = number(j[i], what);
    return v;
}

std::vector<Vector> vectors_from_json(const json& j, const std::string& key) {
    const json* arr = &j;
    if (j.is_object()) {
        if (!j.contains(key)) bad("missing \"" + key + "\"");
        arr = &j.at(key);
    }
    if (!arr->is_array()) bad("\"" + key + "\": expected an array of vectors");
    std::vector<Vector> out;
    for (std::size_t i = 0; i < arr->size(); ++i) out.push_back(vector_from_json((*arr)[i], key + "[" + std::to_string(i) + "]"));
    return out;
}

Space space_from_json(const json& j) {
    if (!j.is_object() || !j.contains("dim") || !j.contains("norm")) bad("space: expected {\"dim\", \"norm\"}");
    if (!j.at("dim").is_number_integer()) bad("space: dim must be an integer");
    const int dim = j.at("dim").get<int>();
    const json& nrm = j.at("norm");
    if (!nrm.is_object() || !nrm.contains("kind") || !nrm.at("kind").is_string()) bad("space: norm.kind missing");
    const std::string kind = nrm.at("kind");
    if (kind == "lp") {
        if (!nrm.contains("p")) bad("space: lp norm needs p");
        const json& p = nrm.at("p");
        if (p.is_string()) {
            if (p.get<std::string>() != "inf") bad("space: p must be a number or \"inf\"");
            return Space(dim, NormSpec::lp(Exponent::infinity()));
        }
        return Space(dim, NormSpec::lp(Exponent::finite(number(p, "space: p"))));
    }
    if (kind == "polyhedral") {
        if (!nrm.contains("functionals") || !nrm.at("functionals").is_array()) bad("space: polyhedral needs functionals");
        const auto rows = vectors_from_json(nrm.at("functionals"), "functionals");
        Eigen::MatrixXd m(static_cast<Eigen::Index>(rows.size()), rows.empty() ? 0 : rows.front().size());
        for (std::size_t i = 0; i < rows.size(); ++i) {
            if (rows[i].size() != m.cols()) bad("space: functionals have different lengths");
            m.row(static_cast<Eigen::Index>(i)) = rows[i].transpose();
        }
        return Space(dim, NormSpec::polyhedral(m));
    }
    bad("space: unknown norm kind '" + kind + "'");
}

json space_to_json(const Space& space) {
    json nrm;
    const NormSpec& spec = space.spec();
    if (spec.kind == NormKind::lp) {
        nrm["kind"] = "lp";
        nrm["p"] = spec.p.is_infinite() ? json("inf") : json(spec.p.finite_value());
    } else {
        nrm["kind"] = "polyhedral";
        json rows = json::array();
        for (Eigen::Index i = 0; i < spec.functionals.rows(); ++i) rows.push_back(vector_to_json(spec.functionals.row(i).transpose()));
        nrm["functionals"] = rows;
    }
    return {{"dim", space.dim()}, {"norm", nrm}};
}

json certificate_to_json(const CoverageCertificate& c) {
    return {{"min_slack", c.min_slack},
            {"net_resolution", c.net_resolution},
            {"full_cover", c.full_cover},
            {"balls_exclude_origin", c.balls_exclude_origin},
            {"worst_point", c.worst_point},
            {"valid", c.valid()}};
}

json target_to_json(const TargetSet& t) {
    if (t.kind == TargetSet::Kind::unit_sphere) {
        return {{"kind", "unit_sphere"}, {"resolution", t.resolution}, {"size", t.size()}};
    }
    json pts = json::array();
    for (Eigen::Index i = 0; i < t.size(); ++i) pts.push_back(vector_to_json(t.points.col(i)));
    return {{"kind", "finite_points"}, {"points", pts}};
}

CoveringFile covering_from_json(const json& j) {
    if (!j.is_object() || !j.contains("balls") || !j.at("balls").is_array()) bad("covering: expected {\"balls\": [..]}");
    CoveringFile f;
    for (std::size_t i = 0; i < j.at("balls").size(); ++i) {
        const json& b = j.at("balls")[i];
        const std::string where = "balls[" + std::to_string(i) + "]";
        if (!b.is_object() || !b.contains("center") || !b.contains("radius")) bad(where + ": needs center and radius");
        f.balls.push_back({vector_from_json(b.at("center"), where + ".center"), number(b.at("radius"), where + ".radius")});
    }
    if (j.contains("target")) f.target = j.at("target");
    if (j.contains("certificate")) f.certificate = j.at("certificate");
    return f;
}

json covering_to_json(const Covering& c, const TargetSet& target) {
    json balls = json::array();
    for (const Ball& b : c.balls) balls.push_back({{"center", vector_to_json(b.center)}, {"radius", b.radius}});
    json out{{"balls", balls}, {"target", target_to_json(target)}};
    if (c.certificate) out["certificate"] = certificate_to_json(*c.certificate);
    return out;
}

TargetSet target_from_json(const Space& space, const json& j) {
    if (!j.is_object() || !j.contains("kind") || !j.at("kind").is_string()) bad("target: kind missing");
    const std::string kind = j.at("kind");
    if (kind == "unit_sphere") {
        if (!j.contains("resolution")) bad("target: unit_sphere needs resolution");
        return TargetSet::sphere(unit_sphere_net(space, number(j.at("resolution"), "target.resolution")));
    }
    if (kind == "finite_points") return TargetSet::finite(vectors_from_json(j, "points"));
    bad("target: unknown kind '" + kind + "'");
}

SelectionInstance instance_from_json(const json& j) {
    if (!j.is_object() || !j.contains("space")) bad("instance: missing space");
    SelectionInstance inst{space_from_json(j.at("space")), vectors_from_json(j, "directions"), vectors_from_json(j, "points"), {}};
    if (j.contains("closure_points")) inst.closure_points = vectors_from_json(j, "closure_points");
    return inst;
}

std::string sha256_hex(const std::string& data) {
    unsigned char digest[EVP_MAX_MD_SIZE];
    unsigned int len = 0;
    if (EVP_Digest(data.data(), data.size(), digest, &len, EVP_sha256(), nullptr) != 1) {
        throw std::runtime_error("SHA-256 failed");
    }
    std::ostringstream os;
    for (unsigned int i = 0; i < len; ++i) os << std::hex << std::setw(2) << std::setfill('0') << static_cast<int>(digest[i]);
    return os.str();
}

}  // namespace ballcover::io
