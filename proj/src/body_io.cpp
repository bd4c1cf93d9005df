#include "chordex/body_io.hpp"

#include <fstream>
#include <sstream>

#include "json.hpp"

namespace chordex {

namespace {

using nlohmann::json;

Vec vec_from_json(const json& j) {
    if (!j.is_array() || j.size() < 2 || j.size() > static_cast<size_t>(kMaxDim))
        throw ParseError("coordinate list must have 2.." + std::to_string(kMaxDim) + " entries");
    Vec v(static_cast<int>(j.size()));
    for (size_t i = 0; i < j.size(); ++i) {
        if (!j[i].is_number()) throw ParseError("coordinates must be numbers");
        v[static_cast<int>(i)] = j[i].get<double>();
    }
    return v;
}

json vec_to_json(const Vec& v) {
    json j = json::array();
    for (int i = 0; i < v.dim(); ++i) j.push_back(v[i]);
    return j;
}

Line line_from_json(const json& j) {
    return Line(vec_from_json(j.at("base")), vec_from_json(j.at("dir")));
}

}  // namespace

Body body_from_json(const std::string& text, Tolerance tol) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::exception& e) {
        throw ParseError(std::string("invalid JSON: ") + e.what());
    }
    try {
        if (j.contains("schema") && j.at("schema").get<int>() != 1)
            throw ParseError("unsupported schema version");
        const std::string kind = j.at("kind").get<std::string>();
        if (kind == "angle") {
            Angle2D a{vec_from_json(j.at("vertex")), vec_from_json(j.at("arm_dirs").at(0)),
                      vec_from_json(j.at("arm_dirs").at(1)), j.at("theta").get<double>()};
            return Body(a, tol);
        }
        if (kind == "strip") {
            return Body(Strip2D{line_from_json(j.at("line1")), line_from_json(j.at("line2"))}, tol);
        }
        if (kind == "polygon") {
            Polygon2D p;
            for (const auto& v : j.at("vertices")) p.vertices.push_back(vec_from_json(v));
            return Body(p, tol);
        }
        if (kind == "ellipse") {
            Ellipse2D e{vec_from_json(j.at("center")), j.at("semi_axes").at(0).get<double>(),
                        j.at("semi_axes").at(1).get<double>(),
                        j.contains("rotation") ? j.at("rotation").get<double>() : 0.0};
            return Body(e, tol);
        }
        if (kind == "polytope") {
            PolytopeH p;
            p.dim = j.at("dimension").get<int>();
            for (const auto& h : j.at("halfspaces"))
                p.halfspaces.push_back(
                    Halfspace{vec_from_json(h.at("normal")), h.at("offset").get<double>()});
            return Body(p, tol);
        }
        if (kind == "simplex") {
            SimplexV s;
            for (const auto& v : j.at("vertices")) s.vertices.push_back(vec_from_json(v));
            return Body(s, tol);
        }
        if (kind == "ball") {
            return Body(BallND{vec_from_json(j.at("center")), j.at("radius").get<double>()}, tol);
        }
        throw ParseError("unknown body kind: " + kind);
    } catch (const json::exception& e) {
        throw ParseError(std::string("malformed body description: ") + e.what());
    } catch (const std::invalid_argument& e) {
        throw ParseError(std::string("invalid body: ") + e.what());
    }
}

Body load_body(const std::string& path, Tolerance tol) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open body file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return body_from_json(ss.str(), tol);
}

std::string body_to_json(const Body& body) {
    json j;
    j["schema"] = 1;
    j["kind"] = body.kind_name();
    if (auto* a = body.as<Angle2D>()) {
        j["vertex"] = vec_to_json(a->vertex);
        j["arm_dirs"] = {vec_to_json(a->u1), vec_to_json(a->u2)};
        j["theta"] = a->theta;
    } else if (auto* s = body.as<Strip2D>()) {
        j["line1"] = {{"base", vec_to_json(s->line1.base)}, {"dir", vec_to_json(s->line1.dir)}};
        j["line2"] = {{"base", vec_to_json(s->line2.base)}, {"dir", vec_to_json(s->line2.dir)}};
    } else if (auto* p = body.as<Polygon2D>()) {
        json verts = json::array();
        for (const Point& v : p->vertices) verts.push_back(vec_to_json(v));
        j["vertices"] = verts;
    } else if (auto* e = body.as<Ellipse2D>()) {
        j["center"] = vec_to_json(e->center);
        j["semi_axes"] = {e->a, e->b};
        j["rotation"] = e->rotation;
    } else if (auto* ph = body.as<PolytopeH>()) {
        j["dimension"] = ph->dim;
        json hs = json::array();
        for (const Halfspace& h : ph->halfspaces)
            hs.push_back({{"normal", vec_to_json(h.normal)}, {"offset", h.offset}});
        j["halfspaces"] = hs;
    } else if (auto* sx = body.as<SimplexV>()) {
        json verts = json::array();
        for (const Point& v : sx->vertices) verts.push_back(vec_to_json(v));
        j["vertices"] = verts;
    } else if (auto* b = body.as<BallND>()) {
        j["center"] = vec_to_json(b->center);
        j["radius"] = b->radius;
    }
    return j.dump(2);
}

}  // namespace chordex
