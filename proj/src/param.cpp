#include "lbmfd/param.hpp"

#include <mutex>
#include <unordered_map>

#include "lbmfd/error.hpp"

namespace lbmfd {
namespace {

struct Table {
    std::mutex mutex;
    std::vector<std::string> names;
    std::unordered_map<std::string, int> ids;
};

Table& table() {
    static Table t;
    return t;
}

}  // namespace

Param::Param(const std::string& name) {
    if (name.empty()) raise(ErrorKind::Internal, "empty parameter name");
    Table& t = table();
    std::lock_guard<std::mutex> lock(t.mutex);
    auto it = t.ids.find(name);
    if (it != t.ids.end()) {
        id_ = it->second;
        return;
    }
    id_ = static_cast<int>(t.names.size());
    t.names.push_back(name);
    t.ids.emplace(name, id_);
}

const std::string& Param::name() const {
    Table& t = table();
    std::lock_guard<std::mutex> lock(t.mutex);
    if (id_ < 0 || id_ >= static_cast<int>(t.names.size()))
        raise(ErrorKind::Internal, "invalid parameter id");
    return t.names[static_cast<size_t>(id_)];
}

Param Param::from_id(int id) {
    Param p;
    p.id_ = id;
    return p;
}

Param Param::lookup(const std::string& name) {
    Table& t = table();
    std::lock_guard<std::mutex> lock(t.mutex);
    auto it = t.ids.find(name);
    if (it == t.ids.end()) return Param();
    return from_id(it->second);
}

}  // namespace lbmfd
