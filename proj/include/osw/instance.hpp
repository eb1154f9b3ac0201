#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "osw/rational.hpp"

namespace osw {

class ValueOracle;

struct Resource {
    std::string name;
    bool dummy = false;
};

// A combinatorial action (R, t): engage resource set R at arrival t.
struct Configuration {
    std::string id;
    int arrival = 0;             // 0-based arrival index
    std::vector<int> resources;  // resource indices, sorted ascending
    bool revealed = false;       // true only for reveal-transform configurations

    bool engages(int resource) const;
};

// Sorted set of configuration indices. Global indices are assigned in
// (arrival, id) order, so ascending iteration is arrival-consistent.
class ElementSet {
public:
    ElementSet() = default;
    explicit ElementSet(std::vector<int> elems);

    bool contains(int e) const;
    void insert(int e);
    void erase(int e);
    ElementSet with(int e) const;
    ElementSet unite(const ElementSet& other) const;

    const std::vector<int>& elems() const { return elems_; }
    std::size_t size() const { return elems_.size(); }
    bool empty() const { return elems_.empty(); }

    bool operator==(const ElementSet& other) const { return elems_ == other.elems_; }
    bool operator<(const ElementSet& other) const { return elems_ < other.elems_; }

private:
    std::vector<int> elems_;
};

// Joint activation distribution for one configuration. Bit k of an outcome
// mask refers to Configuration::resources[k].
struct OutcomeTable {
    std::vector<std::pair<std::uint32_t, Rat>> outcomes;  // probs sum to 1
};

struct ActivationModel {
    std::vector<OutcomeTable> per_config;
    std::vector<std::vector<Rat>> marginals;  // [config][resource position]
};

// Immutable structural data shared by the instance and its oracles.
struct InstanceCore {
    std::string name;
    std::vector<Resource> resources;
    int num_arrivals = 0;
    std::vector<Configuration> configs;
    std::vector<std::vector<int>> menus;  // per arrival, ascending indices
    std::vector<std::vector<int>> owned;  // N_i per resource
    std::vector<Rat> arrival_times;       // empty or one per arrival
    ActivationModel activation;
    std::map<std::string, int> config_by_id;
    std::map<std::string, int> resource_by_name;

    bool has_arrival_times() const { return !arrival_times.empty(); }
    // p_{i,e}; zero when i is not in e's resource set.
    Rat p(int resource, int e) const;
    bool is_subfeasible(const ElementSet& S) const;
    ElementSet restrict_to(const ElementSet& S, int resource) const;
};

using CorePtr = std::shared_ptr<const InstanceCore>;

// Partial map arrival -> chosen configuration.
struct Allocation {
    std::map<int, int> choice;  // arrival index -> config index

    ElementSet elements() const;
};

enum class ArrivalModel { Adversarial, Uiid };

struct ObjectiveSpec;

struct ActivationSpec {
    enum class Kind { Independent, Joint };
    Kind kind = Kind::Independent;
    std::map<std::string, Rat> marginals;                         // resource name -> p
    std::vector<std::pair<std::vector<std::string>, Rat>> joint;  // active names -> prob
};

struct ConfigurationSpec {
    std::string id;
    int arrival = 1;  // 1-based in specs and files
    std::vector<std::string> resources;
    bool revealed = false;
};

struct InstanceData {
    std::string name;
    std::vector<Resource> resources;
    int num_arrivals = 0;
    std::vector<Rat> arrival_times;  // empty or one per arrival, strictly increasing
    std::vector<ConfigurationSpec> configurations;
    std::map<std::string, ActivationSpec> activation;  // by config id; absent => p = 1
    std::vector<std::pair<std::string, std::shared_ptr<const ObjectiveSpec>>> objectives;
    ArrivalModel arrival_model = ArrivalModel::Adversarial;
};

class Instance {
public:
    static Instance build(const InstanceData& data);

    // Builds with explicitly supplied oracles (reveal-transform path); one
    // oracle per resource, dummies included.
    static Instance build_with_oracles(const InstanceData& data,
                                       std::vector<std::shared_ptr<const ValueOracle>> oracles);

    // As above, but the factory receives the freshly built structural core so
    // the oracles can co-own it.
    using OracleFactory =
        std::function<std::vector<std::shared_ptr<const ValueOracle>>(const CorePtr&)>;
    static Instance build_with_oracles(const InstanceData& data, const OracleFactory& make);

    const std::string& name() const { return core_->name; }
    const std::vector<Resource>& resources() const { return core_->resources; }
    int num_arrivals() const { return core_->num_arrivals; }
    const std::vector<Configuration>& configs() const { return core_->configs; }
    const Configuration& config(int e) const { return core_->configs.at(static_cast<std::size_t>(e)); }
    const std::vector<std::vector<int>>& menus() const { return core_->menus; }
    const std::vector<int>& menu(int t) const { return core_->menus.at(static_cast<std::size_t>(t)); }
    const std::vector<int>& owned(int i) const { return core_->owned.at(static_cast<std::size_t>(i)); }
    bool has_arrival_times() const { return core_->has_arrival_times(); }
    const Rat& arrival_time(int t) const;
    const ActivationModel& activation() const { return core_->activation; }
    Rat p(int resource, int e) const { return core_->p(resource, e); }
    const ValueOracle& objective(int i) const;
    const std::vector<std::shared_ptr<const ValueOracle>>& objectives() const {
        return objectives_;
    }
    ArrivalModel arrival_model() const { return arrival_model_; }
    const InstanceData& data() const { return data_; }
    const CorePtr& core() const { return core_; }

    int config_index(const std::string& id) const;
    int resource_index(const std::string& name) const;

private:
    CorePtr core_;
    std::vector<std::shared_ptr<const ValueOracle>> objectives_;
    ArrivalModel arrival_model_ = ArrivalModel::Adversarial;
    InstanceData data_;

    static CorePtr build_core(const InstanceData& data);
};

// |S ∩ N_t| <= 1 for every arrival. Throws if S has unknown elements.
bool is_subfeasible(const ElementSet& S, const Instance& inst);

// S ∩ N_i, preserving arrival order.
ElementSet restrict_to(const ElementSet& S, int resource, const Instance& inst);

struct ValidationError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Canonical fixtures.
InstanceData sr_ex_data();
InstanceData reuse_ex_data();
Instance sr_ex();
Instance reuse_ex();

}  // namespace osw
