#include <fstream>

#include "json.hpp"
#include "texroi/learn.hpp"

namespace texroi::learn {

using nlohmann::json;

void save_model(const LogRegModel& model, const Standardizer& standardizer,
                const std::string& descriptor, const std::string& roi_tag,
                const std::filesystem::path& path) {
    json j;
    j["weights"] = std::vector<double>(model.weights.data(),
                                       model.weights.data() + model.weights.size());
    j["bias"] = model.bias;
    j["lambda"] = model.lambda;
    j["means"] = std::vector<double>(standardizer.mean.data(),
                                     standardizer.mean.data() + standardizer.mean.size());
    j["stds"] = std::vector<double>(standardizer.stddev.data(),
                                    standardizer.stddev.data() + standardizer.stddev.size());
    j["descriptor"] = descriptor;
    j["roi_tag"] = roi_tag;
    std::ofstream out(path);
    if (!out) throw error("cannot open file for writing: " + path.string());
    out << j.dump(2) << "\n";
}

LoadedModel load_model(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw error("cannot open model file: " + path.string());
    json j;
    try {
        in >> j;
    } catch (const json::exception& e) {
        throw error("model file is not valid JSON (" + path.string() + "): " + e.what());
    }
    LoadedModel m;
    const auto weights = j.at("weights").get<std::vector<double>>();
    const auto means = j.at("means").get<std::vector<double>>();
    const auto stds = j.at("stds").get<std::vector<double>>();
    if (weights.size() != means.size() || weights.size() != stds.size())
        throw error("model file: inconsistent vector lengths: " + path.string());
    m.model.weights = Eigen::Map<const Eigen::VectorXd>(weights.data(),
                                                        static_cast<Eigen::Index>(weights.size()));
    m.model.bias = j.at("bias").get<double>();
    m.model.lambda = j.at("lambda").get<double>();
    m.model.converged = true;
    m.standardizer.mean =
        Eigen::Map<const Eigen::VectorXd>(means.data(), static_cast<Eigen::Index>(means.size()));
    m.standardizer.stddev =
        Eigen::Map<const Eigen::VectorXd>(stds.data(), static_cast<Eigen::Index>(stds.size()));
    m.standardizer.constant.assign(weights.size(), 0);
    m.descriptor = j.at("descriptor").get<std::string>();
    m.roi_tag = j.at("roi_tag").get<std::string>();
    return m;
}

}  // namespace texroi::learn
