#pragma once

#include <algorithm>
#include <sstream>
#include <string>
#include <vector>

namespace orbiloop::cli {

/// Left-aligned text table with a header rule.
class Table {
public:
    explicit Table(std::vector<std::string> header) : header_(std::move(header)) {}
    void add(std::vector<std::string> row) { rows_.push_back(std::move(row)); }

    std::string str() const {
        std::vector<std::size_t> w(header_.size());
        for (std::size_t c = 0; c < w.size(); ++c) {
            w[c] = header_[c].size();
            for (const auto& r : rows_) w[c] = std::max(w[c], c < r.size() ? r[c].size() : 0);
        }
        std::ostringstream os;
        auto line = [&](const std::vector<std::string>& r) {
            std::string s;
            for (std::size_t c = 0; c < w.size(); ++c) {
                const std::string cell = c < r.size() ? r[c] : "";
                s += cell + (c + 1 < w.size() ? std::string(w[c] - cell.size() + 2, ' ') : "");
            }
            while (!s.empty() && s.back() == ' ') s.pop_back();
            os << s << '\n';
        };
        line(header_);
        std::size_t total = 0;
        for (std::size_t c = 0; c < w.size(); ++c) total += w[c] + (c + 1 < w.size() ? 2 : 0);
        os << std::string(total, '-') << '\n';
        for (const auto& r : rows_) line(r);
        return os.str();
    }

private:
    std::vector<std::string> header_;
    std::vector<std::vector<std::string>> rows_;
};

inline std::string joinInts(const std::vector<int>& v, const char* sep = " ") {
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? sep : "") + std::to_string(v[i]);
    return s;
}

}  // namespace orbiloop::cli
