#include "solarcast/serialize.hpp"

#include <json.hpp>

namespace solarcast {

namespace {

using nlohmann::json;

json check_doc(const std::string& doc, const std::string& kind) {
    json j = json::parse(doc, nullptr, /*allow_exceptions=*/false);
    if (j.is_discarded()) throw ParseError("malformed JSON document");
    if (j.value("format_version", -1) != kDocumentVersion)
        throw ParseError("unsupported document version");
    if (j.value("kind", "") != kind)
        throw ParseError("expected document kind '" + kind + "'");
    return j;
}

json tree_to_json(const RegressionTree& tree) {
    json nodes = json::array();
    for (const TreeNode& n : tree.nodes())
        nodes.push_back({n.feature, n.threshold, n.left, n.right, n.value});
    return nodes;
}

RegressionTree tree_from_json(const json& j) {
    std::vector<TreeNode> nodes;
    nodes.reserve(j.size());
    for (const auto& e : j) {
        TreeNode n;
        n.feature = e.at(0).get<int>();
        n.threshold = e.at(1).get<double>();
        n.left = e.at(2).get<int>();
        n.right = e.at(3).get<int>();
        n.value = e.at(4).get<double>();
        nodes.push_back(n);
    }
    return RegressionTree(std::move(nodes));
}

}  // namespace

std::string serialize_ngboost(const NGBoostModel& model) {
    json j;
    j["format_version"] = kDocumentVersion;
    j["kind"] = "ngboost";
    j["config"] = {{"n_estimators", model.config.n_estimators},
                   {"learning_rate", model.config.learning_rate},
                   {"max_depth", model.config.max_depth},
                   {"min_samples_leaf", model.config.min_samples_leaf},
                   {"minibatch_frac", model.config.minibatch_frac},
                   {"seed", model.config.seed}};
    j["init_mu"] = model.init_mu;
    j["init_log_sigma"] = model.init_log_sigma;
    json stages = json::array();
    for (const NGBoostStage& st : model.stages)
        stages.push_back({{"tree_mu", tree_to_json(st.tree_mu)},
                          {"tree_log_sigma", tree_to_json(st.tree_log_sigma)},
                          {"rho", st.rho}});
    j["stages"] = std::move(stages);
    return j.dump();
}

NGBoostModel deserialize_ngboost(const std::string& doc) {
    const json j = check_doc(doc, "ngboost");
    NGBoostModel m;
    const json& c = j.at("config");
    m.config.n_estimators = c.at("n_estimators").get<int>();
    m.config.learning_rate = c.at("learning_rate").get<double>();
    m.config.max_depth = c.at("max_depth").get<int>();
    m.config.min_samples_leaf = c.at("min_samples_leaf").get<int>();
    m.config.minibatch_frac = c.at("minibatch_frac").get<double>();
    m.config.seed = c.at("seed").get<std::uint64_t>();
    m.init_mu = j.at("init_mu").get<double>();
    m.init_log_sigma = j.at("init_log_sigma").get<double>();
    for (const auto& st : j.at("stages"))
        m.stages.push_back({tree_from_json(st.at("tree_mu")),
                            tree_from_json(st.at("tree_log_sigma")),
                            st.at("rho").get<double>()});
    return m;
}

std::string serialize_chp(const ChpModel& model) {
    json j;
    j["format_version"] = kDocumentVersion;
    j["kind"] = "chp";
    j["slot_minutes"] = model.slot_minutes;
    json buckets = json::array();
    for (const auto& [slot, values] : model.buckets)
        buckets.push_back({{"slot", slot}, {"values", values}});
    j["buckets"] = std::move(buckets);
    return j.dump();
}

ChpModel deserialize_chp(const std::string& doc) {
    const json j = check_doc(doc, "chp");
    ChpModel m;
    m.slot_minutes = j.at("slot_minutes").get<std::int64_t>();
    for (const auto& b : j.at("buckets"))
        m.buckets[b.at("slot").get<int>()] = b.at("values").get<std::vector<double>>();
    return m;
}

std::string serialize_mcm(const McmModel& model) {
    json j;
    j["format_version"] = kDocumentVersion;
    j["kind"] = "mcm";
    j["n_states"] = model.n_states;
    j["edges"] = model.edges;
    j["transition"] = model.transition;
    return j.dump();
}

McmModel deserialize_mcm(const std::string& doc) {
    const json j = check_doc(doc, "mcm");
    McmModel m;
    m.n_states = j.at("n_states").get<int>();
    m.edges = j.at("edges").get<std::vector<double>>();
    m.transition = j.at("transition").get<std::vector<double>>();
    return m;
}

std::string serialize_crude(const CrudeCalibrator& cal) {
    json j;
    j["format_version"] = kDocumentVersion;
    j["kind"] = "crude";
    j["residual_quantiles"] = cal.residual_quantiles();
    j["shift"] = cal.shift();
    return j.dump();
}

CrudeCalibrator deserialize_crude(const std::string& doc) {
    const json j = check_doc(doc, "crude");
    return CrudeCalibrator(j.at("residual_quantiles").get<std::vector<double>>(),
                           j.at("shift").get<double>());
}

std::string serialize_kuleshov(const KuleshovCalibrator& cal) {
    json j;
    j["format_version"] = kDocumentVersion;
    j["kind"] = "kuleshov";
    j["levels"] = cal.knot_levels();
    j["coverage"] = cal.knot_coverage();
    return j.dump();
}

KuleshovCalibrator deserialize_kuleshov(const std::string& doc) {
    const json j = check_doc(doc, "kuleshov");
    return KuleshovCalibrator(j.at("levels").get<std::vector<double>>(),
                              j.at("coverage").get<std::vector<double>>());
}

std::string serialize_mle(const MleCalibrator& cal) {
    json j;
    j["format_version"] = kDocumentVersion;
    j["kind"] = "mle";
    j["shift"] = cal.shift();
    j["scale"] = cal.scale();
    return j.dump();
}

MleCalibrator deserialize_mle(const std::string& doc) {
    const json j = check_doc(doc, "mle");
    return MleCalibrator(j.at("shift").get<double>(), j.at("scale").get<double>());
}

}  // namespace solarcast
