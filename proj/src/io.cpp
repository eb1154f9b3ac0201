#include "osw/io.hpp"

#include <json.hpp>
#include <sstream>

namespace osw {

using nlohmann::json;

namespace {

void require_keys(const json& obj, const std::string& where,
                  std::initializer_list<const char*> allowed) {
    if (!obj.is_object()) throw ValidationError(where + ": expected an object");
    for (const auto& [key, value] : obj.items()) {
        (void)value;
        bool ok = false;
        for (const char* a : allowed)
            if (key == a) ok = true;
        if (!ok) throw ValidationError(where + ": unknown field '" + key + "'");
    }
}

const json& require(const json& obj, const std::string& where, const char* key) {
    auto it = obj.find(key);
    if (it == obj.end()) throw ValidationError(where + ": missing field '" + key + "'");
    return *it;
}

std::string get_string(const json& v, const std::string& where) {
    if (!v.is_string()) throw ValidationError(where + ": expected a string");
    return v.get<std::string>();
}

Rat get_rat(const json& v, const std::string& where) {
    if (v.is_number_integer()) return Rat(static_cast<long>(v.get<long long>()));
    if (!v.is_string()) throw ValidationError(where + ": expected a rational string");
    try {
        return parse_rat(v.get<std::string>());
    } catch (const std::exception& e) {
        throw ValidationError(where + ": " + e.what());
    }
}

int get_int(const json& v, const std::string& where) {
    if (!v.is_number_integer()) throw ValidationError(where + ": expected an integer");
    return v.get<int>();
}

bool get_bool(const json& v, const std::string& where) {
    if (!v.is_boolean()) throw ValidationError(where + ": expected a boolean");
    return v.get<bool>();
}

std::vector<std::string> get_string_list(const json& v, const std::string& where) {
    if (!v.is_array()) throw ValidationError(where + ": expected an array");
    std::vector<std::string> out;
    for (const auto& item : v) out.push_back(get_string(item, where));
    return out;
}

ActivationSpec parse_activation(const json& v, const std::string& where) {
    require_keys(v, where, {"independent", "joint"});
    if (v.contains("independent") == v.contains("joint"))
        throw ValidationError(where + ": need exactly one of 'independent' or 'joint'");
    ActivationSpec spec;
    if (v.contains("independent")) {
        spec.kind = ActivationSpec::Kind::Independent;
        const json& m = v["independent"];
        if (!m.is_object()) throw ValidationError(where + ".independent: expected an object");
        for (const auto& [rname, p] : m.items())
            spec.marginals.emplace(rname, get_rat(p, where + ".independent." + rname));
    } else {
        spec.kind = ActivationSpec::Kind::Joint;
        const json& rows = v["joint"];
        if (!rows.is_array()) throw ValidationError(where + ".joint: expected an array");
        for (const auto& row : rows) {
            require_keys(row, where + ".joint[]", {"active", "prob"});
            spec.joint.emplace_back(
                get_string_list(require(row, where + ".joint[]", "active"), where + ".active"),
                get_rat(require(row, where + ".joint[]", "prob"), where + ".prob"));
        }
    }
    return spec;
}

json dump_activation(const ActivationSpec& spec) {
    json v = json::object();
    if (spec.kind == ActivationSpec::Kind::Independent) {
        json m = json::object();
        for (const auto& [rname, p] : spec.marginals) m[rname] = rat_str(p);
        v["independent"] = std::move(m);
    } else {
        json rows = json::array();
        for (const auto& [names, prob] : spec.joint)
            rows.push_back({{"active", names}, {"prob", rat_str(prob)}});
        v["joint"] = std::move(rows);
    }
    return v;
}

std::shared_ptr<const ObjectiveSpec> parse_objective(const json& v, const std::string& where) {
    std::string family = get_string(require(v, where, "family"), where + ".family");
    if (family == "zero") {
        require_keys(v, where, {"family"});
        return zero_spec();
    }
    if (family == "coverage") {
        require_keys(v, where, {"family"});
        return coverage_spec();
    }
    if (family == "budget-additive") {
        require_keys(v, where, {"family", "budget", "bids"});
        std::map<std::string, Rat> bids;
        for (const auto& [id, b] : require(v, where, "bids").items())
            bids.emplace(id, get_rat(b, where + ".bids." + id));
        return budget_additive_spec(get_rat(require(v, where, "budget"), where + ".budget"),
                                    std::move(bids));
    }
    if (family == "weighted-config") {
        require_keys(v, where, {"family", "weights", "free_disposal", "capacity"});
        std::map<std::string, Rat> weights;
        for (const auto& [id, w] : require(v, where, "weights").items())
            weights.emplace(id, get_rat(w, where + ".weights." + id));
        bool fd = v.contains("free_disposal")
                      ? get_bool(v["free_disposal"], where + ".free_disposal")
                      : false;
        int capacity = v.contains("capacity") ? get_int(v["capacity"], where + ".capacity") : 1;
        return weighted_config_spec(std::move(weights), fd, capacity);
    }
    if (family == "explicit-table") {
        require_keys(v, where, {"family", "table"});
        std::vector<std::pair<std::vector<std::string>, Rat>> table;
        const json& rows = require(v, where, "table");
        if (!rows.is_array()) throw ValidationError(where + ".table: expected an array");
        for (const auto& row : rows) {
            require_keys(row, where + ".table[]", {"set", "value"});
            table.emplace_back(
                get_string_list(require(row, where + ".table[]", "set"), where + ".set"),
                get_rat(require(row, where + ".table[]", "value"), where + ".value"));
        }
        return explicit_table_spec(std::move(table));
    }
    if (family == "reusable") {
        require_keys(v, where, {"family", "duration"});
        return reusable_spec(get_rat(require(v, where, "duration"), where + ".duration"));
    }
    if (family == "sum") {
        require_keys(v, where, {"family", "parts"});
        std::vector<std::pair<Rat, std::shared_ptr<const ObjectiveSpec>>> parts;
        const json& rows = require(v, where, "parts");
        if (!rows.is_array()) throw ValidationError(where + ".parts: expected an array");
        for (const auto& row : rows) {
            require_keys(row, where + ".parts[]", {"coeff", "objective"});
            parts.emplace_back(
                get_rat(require(row, where + ".parts[]", "coeff"), where + ".coeff"),
                parse_objective(require(row, where + ".parts[]", "objective"),
                                where + ".objective"));
        }
        return sum_spec(std::move(parts));
    }
    throw ValidationError(where + ": unknown objective family '" + family + "'");
}

json dump_objective(const ObjectiveSpec& spec) {
    using Family = ObjectiveSpec::Family;
    json v = json::object();
    switch (spec.family) {
        case Family::Zero:
            v["family"] = "zero";
            break;
        case Family::Coverage:
            v["family"] = "coverage";
            break;
        case Family::BudgetAdditive: {
            v["family"] = "budget-additive";
            v["budget"] = rat_str(spec.budget);
            json bids = json::object();
            for (const auto& [id, b] : spec.weights) bids[id] = rat_str(b);
            v["bids"] = std::move(bids);
            break;
        }
        case Family::WeightedConfig: {
            v["family"] = "weighted-config";
            json weights = json::object();
            for (const auto& [id, w] : spec.weights) weights[id] = rat_str(w);
            v["weights"] = std::move(weights);
            v["free_disposal"] = spec.free_disposal;
            v["capacity"] = spec.capacity;
            break;
        }
        case Family::ExplicitTable: {
            v["family"] = "explicit-table";
            json rows = json::array();
            for (const auto& [set, value] : spec.table)
                rows.push_back({{"set", set}, {"value", rat_str(value)}});
            v["table"] = std::move(rows);
            break;
        }
        case Family::Reusable:
            v["family"] = "reusable";
            v["duration"] = rat_str(spec.duration);
            break;
        case Family::Sum: {
            v["family"] = "sum";
            json rows = json::array();
            for (const auto& [coeff, part] : spec.parts)
                rows.push_back({{"coeff", rat_str(coeff)}, {"objective", dump_objective(*part)}});
            v["parts"] = std::move(rows);
            break;
        }
    }
    return v;
}

}  // namespace

InstanceData parse_instance_data(const std::string& text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const std::exception& e) {
        throw ValidationError(std::string("instance file: ") + e.what());
    }
    // "annotations" is reserved for provenance notes and ignored on input.
    require_keys(doc, "instance",
                 {"name", "arrival_model", "num_arrivals", "arrival_times", "resources",
                  "configurations", "objectives", "annotations"});
    InstanceData data;
    data.name = get_string(require(doc, "instance", "name"), "name");
    if (doc.contains("arrival_model")) {
        std::string m = get_string(doc["arrival_model"], "arrival_model");
        if (m == "adversarial")
            data.arrival_model = ArrivalModel::Adversarial;
        else if (m == "uiid")
            data.arrival_model = ArrivalModel::Uiid;
        else
            throw ValidationError("arrival_model: unknown value '" + m + "'");
    }
    data.num_arrivals = get_int(require(doc, "instance", "num_arrivals"), "num_arrivals");
    if (doc.contains("arrival_times"))
        for (const auto& a : doc["arrival_times"]) data.arrival_times.push_back(get_rat(a, "arrival_times"));

    const json& resources = require(doc, "instance", "resources");
    if (!resources.is_array()) throw ValidationError("resources: expected an array");
    for (const auto& r : resources) {
        require_keys(r, "resources[]", {"name", "dummy"});
        Resource res;
        res.name = get_string(require(r, "resources[]", "name"), "resources[].name");
        if (r.contains("dummy")) res.dummy = get_bool(r["dummy"], "resources[].dummy");
        data.resources.push_back(std::move(res));
    }

    const json& configs = require(doc, "instance", "configurations");
    if (!configs.is_array()) throw ValidationError("configurations: expected an array");
    for (const auto& c : configs) {
        require_keys(c, "configurations[]", {"id", "arrival", "resources", "revealed", "activation"});
        ConfigurationSpec cs;
        cs.id = get_string(require(c, "configurations[]", "id"), "configurations[].id");
        cs.arrival = get_int(require(c, "configurations[]", "arrival"), cs.id + ".arrival");
        cs.resources = get_string_list(require(c, "configurations[]", "resources"),
                                       cs.id + ".resources");
        if (c.contains("revealed")) cs.revealed = get_bool(c["revealed"], cs.id + ".revealed");
        if (c.contains("activation"))
            data.activation.emplace(cs.id, parse_activation(c["activation"], cs.id + ".activation"));
        data.configurations.push_back(std::move(cs));
    }

    const json& objectives = require(doc, "instance", "objectives");
    if (!objectives.is_object()) throw ValidationError("objectives: expected an object");
    for (const auto& [rname, spec] : objectives.items())
        data.objectives.emplace_back(rname, parse_objective(spec, "objectives." + rname));
    return data;
}

Instance parse_instance(const std::string& text) {
    return Instance::build(parse_instance_data(text));
}

std::string serialize_instance_data(const InstanceData& data) {
    json doc = json::object();
    doc["name"] = data.name;
    doc["arrival_model"] = data.arrival_model == ArrivalModel::Uiid ? "uiid" : "adversarial";
    doc["num_arrivals"] = data.num_arrivals;
    if (!data.arrival_times.empty()) {
        json times = json::array();
        for (const auto& a : data.arrival_times) times.push_back(rat_str(a));
        doc["arrival_times"] = std::move(times);
    }
    json resources = json::array();
    for (const auto& r : data.resources) {
        json row = {{"name", r.name}};
        if (r.dummy) row["dummy"] = true;
        resources.push_back(std::move(row));
    }
    doc["resources"] = std::move(resources);
    json configs = json::array();
    for (const auto& c : data.configurations) {
        json row = {{"id", c.id}, {"arrival", c.arrival}, {"resources", c.resources}};
        if (c.revealed) row["revealed"] = true;
        auto it = data.activation.find(c.id);
        if (it != data.activation.end()) row["activation"] = dump_activation(it->second);
        configs.push_back(std::move(row));
    }
    doc["configurations"] = std::move(configs);
    json objectives = json::object();
    for (const auto& [rname, spec] : data.objectives)
        objectives[rname] = dump_objective(*spec);
    doc["objectives"] = std::move(objectives);
    return doc.dump(2) + "\n";
}

std::string serialize_instance(const Instance& inst) {
    return serialize_instance_data(inst.data());
}

TypeDistribution parse_distribution(const std::string& text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const std::exception& e) {
        throw ValidationError(std::string("distribution file: ") + e.what());
    }
    require_keys(doc, "distribution",
                 {"name", "horizon", "resources", "types", "budgets", "bids"});
    TypeDistribution dist;
    dist.name = get_string(require(doc, "distribution", "name"), "name");
    dist.horizon = get_int(require(doc, "distribution", "horizon"), "horizon");
    for (const auto& r : require(doc, "distribution", "resources")) {
        require_keys(r, "resources[]", {"name", "dummy"});
        Resource res;
        res.name = get_string(require(r, "resources[]", "name"), "resources[].name");
        if (r.contains("dummy")) res.dummy = get_bool(r["dummy"], "resources[].dummy");
        dist.resources.push_back(std::move(res));
    }
    for (const auto& t : require(doc, "distribution", "types")) {
        require_keys(t, "types[]", {"name", "weight", "menu"});
        ArrivalType ty;
        ty.name = get_string(require(t, "types[]", "name"), "types[].name");
        ty.weight = get_rat(require(t, "types[]", "weight"), ty.name + ".weight");
        for (const auto& c : require(t, "types[]", "menu")) {
            require_keys(c, "menu[]", {"id", "resources", "activation"});
            TypeConfig cfg;
            cfg.id = get_string(require(c, "menu[]", "id"), "menu[].id");
            cfg.resources = get_string_list(require(c, "menu[]", "resources"), cfg.id + ".resources");
            if (c.contains("activation"))
                cfg.activation = parse_activation(c["activation"], cfg.id + ".activation");
            ty.menu.push_back(std::move(cfg));
        }
        dist.types.push_back(std::move(ty));
    }
    for (const auto& [rname, b] : require(doc, "distribution", "budgets").items())
        dist.budgets.emplace(rname, get_rat(b, "budgets." + rname));
    if (doc.contains("bids"))
        for (const auto& [rname, by_cfg] : doc["bids"].items())
            for (const auto& [cid, bid] : by_cfg.items())
                dist.bids[rname].emplace(cid, get_rat(bid, "bids." + rname + "." + cid));
    validate_distribution(dist);
    return dist;
}

std::string serialize_distribution(const TypeDistribution& dist) {
    json doc = json::object();
    doc["name"] = dist.name;
    doc["horizon"] = dist.horizon;
    json resources = json::array();
    for (const auto& r : dist.resources) {
        json row = {{"name", r.name}};
        if (r.dummy) row["dummy"] = true;
        resources.push_back(std::move(row));
    }
    doc["resources"] = std::move(resources);
    json types = json::array();
    for (const auto& ty : dist.types) {
        json menu = json::array();
        for (const auto& cfg : ty.menu) {
            json row = {{"id", cfg.id}, {"resources", cfg.resources}};
            if (!cfg.activation.marginals.empty() || !cfg.activation.joint.empty())
                row["activation"] = dump_activation(cfg.activation);
            menu.push_back(std::move(row));
        }
        types.push_back({{"name", ty.name}, {"weight", rat_str(ty.weight)}, {"menu", std::move(menu)}});
    }
    doc["types"] = std::move(types);
    json budgets = json::object();
    for (const auto& [rname, b] : dist.budgets) budgets[rname] = rat_str(b);
    doc["budgets"] = std::move(budgets);
    json bids = json::object();
    for (const auto& [rname, by_cfg] : dist.bids) {
        json inner = json::object();
        for (const auto& [cid, bid] : by_cfg) inner[cid] = rat_str(bid);
        bids[rname] = std::move(inner);
    }
    doc["bids"] = std::move(bids);
    return doc.dump(2) + "\n";
}

namespace {

std::string opt_rat(const std::optional<Rat>& v) { return v ? rat_str(*v) : std::string(); }

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> out;
    std::string field;
    for (char ch : line) {
        if (ch == ',') {
            out.push_back(field);
            field.clear();
        } else {
            field += ch;
        }
    }
    out.push_back(field);
    return out;
}

}  // namespace

std::string report_csv(const std::vector<ExperimentRow>& rows) {
    std::ostringstream out;
    out << "instance_id,family,ALG,OPT,AOPT,OPTC,ratio_alg_optc,cert_ok,checks_ok\n";
    for (const auto& r : rows) {
        out << r.instance_id << ',' << r.family << ',' << opt_rat(r.alg) << ',' << opt_rat(r.opt)
            << ',' << opt_rat(r.aopt) << ',' << opt_rat(r.optc) << ','
            << opt_rat(r.ratio_alg_optc) << ',' << (r.cert_ok ? 1 : 0) << ','
            << (r.checks_ok ? 1 : 0) << '\n';
    }
    return out.str();
}

std::vector<ExperimentRow> parse_report_csv(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    if (!std::getline(in, line)) throw ValidationError("empty CSV report");
    if (line != "instance_id,family,ALG,OPT,AOPT,OPTC,ratio_alg_optc,cert_ok,checks_ok")
        throw ValidationError("unexpected CSV header: " + line);
    std::vector<ExperimentRow> rows;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        auto fields = split_csv_line(line);
        if (fields.size() != 9) throw ValidationError("malformed CSV row: " + line);
        ExperimentRow r;
        r.instance_id = fields[0];
        r.family = fields[1];
        auto opt_field = [](const std::string& s) -> std::optional<Rat> {
            if (s.empty()) return std::nullopt;
            return parse_rat(s);
        };
        r.alg = opt_field(fields[2]);
        r.opt = opt_field(fields[3]);
        r.aopt = opt_field(fields[4]);
        r.optc = opt_field(fields[5]);
        r.ratio_alg_optc = opt_field(fields[6]);
        r.cert_ok = fields[7] == "1";
        r.checks_ok = fields[8] == "1";
        rows.push_back(std::move(r));
    }
    return rows;
}

std::string trace_csv(const Instance& inst, const GreedyTrace& trace) {
    std::ostringstream out;
    out << "arrival,chosen,chosen_marginal,max_marginal\n";
    for (const auto& step : trace.steps) {
        out << step.arrival + 1 << ','
            << (step.chosen ? inst.config(*step.chosen).id : std::string()) << ','
            << rat_str(step.chosen_marginal) << ',' << rat_str(step.max_marginal) << '\n';
    }
    return out.str();
}

std::string uiid_csv(const RatioEstimate& est) {
    std::ostringstream out;
    out << "trial,ALG,OPTC\n";
    for (std::size_t k = 0; k < est.per_trial.size(); ++k)
        out << k + 1 << ',' << rat_str(est.per_trial[k].first) << ','
            << rat_str(est.per_trial[k].second) << '\n';
    return out.str();
}

}  // namespace osw
