#include <fstream>

#include "json.hpp"
#include "texroi/imagecore.hpp"

namespace texroi::imagecore {

using nlohmann::json;

LandmarkSet load_landmarks(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw error("cannot open landmark file: " + path.string());
    json j;
    try {
        in >> j;
    } catch (const json::exception& e) {
        throw error("landmark file is not valid JSON (" + path.string() + "): " + e.what());
    }
    LandmarkSet lm;
    if (!j.contains("points") || !j["points"].is_array())
        throw error("landmark file missing 'points' array: " + path.string());
    for (const auto& p : j["points"]) {
        lm.points.push_back({p.at("name").get<std::string>(), p.at("x").get<double>(),
                             p.at("y").get<double>()});
    }
    if (j.contains("contours")) {
        for (const auto& [name, pts] : j["contours"].items()) {
            std::vector<Point2d> contour;
            for (const auto& xy : pts)
                contour.push_back({xy.at(0).get<double>(), xy.at(1).get<double>()});
            lm.contours.emplace(name, std::move(contour));
        }
    }
    lm.validate();
    return lm;
}

void save_landmarks(const LandmarkSet& lm, const std::filesystem::path& path) {
    json j;
    j["points"] = json::array();
    for (const auto& p : lm.points)
        j["points"].push_back({{"name", p.name}, {"x", p.x}, {"y", p.y}});
    j["contours"] = json::object();
    for (const auto& [name, pts] : lm.contours) {
        json arr = json::array();
        for (const auto& p : pts) arr.push_back({p.x, p.y});
        j["contours"][name] = std::move(arr);
    }
    std::ofstream out(path);
    if (!out) throw error("cannot open file for writing: " + path.string());
    out << j.dump(2) << "\n";
}

}  // namespace texroi::imagecore
