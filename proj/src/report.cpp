#include "lbmfd/report.hpp"

#include <sstream>

namespace lbmfd {

namespace {

void render(const nlohmann::json& node, std::ostringstream& os, int indent) {
    std::string pad(static_cast<size_t>(indent) * 2, ' ');
    if (node.is_object()) {
        for (auto it = node.begin(); it != node.end(); ++it) {
            if (it.value().is_object() || it.value().is_array()) {
                os << pad << it.key() << ":\n";
                render(it.value(), os, indent + 1);
            } else {
                os << pad << it.key() << ": " << (it.value().is_string()
                                                      ? it.value().get<std::string>()
                                                      : it.value().dump())
                   << "\n";
            }
        }
    } else if (node.is_array()) {
        for (const auto& item : node) {
            if (item.is_object() || item.is_array()) {
                os << pad << "-\n";
                render(item, os, indent + 1);
            } else {
                os << pad << "- "
                   << (item.is_string() ? item.get<std::string>() : item.dump()) << "\n";
            }
        }
    } else {
        os << pad << (node.is_string() ? node.get<std::string>() : node.dump()) << "\n";
    }
}

}  // namespace

std::string Report::text() const {
    std::ostringstream os;
    render(root_, os, 0);
    return os.str();
}

}  // namespace lbmfd
