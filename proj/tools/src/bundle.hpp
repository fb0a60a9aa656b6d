#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace meshroute::cli {

/// A report bundle assembled fully in memory and flushed in one pass, so a
/// failing command never leaves partial output behind.
struct Bundle {
    std::vector<std::pair<std::string, std::string>> files;

    void add(std::string name, std::string content) {
        files.emplace_back(std::move(name), std::move(content));
    }
};

void write_bundle(const std::filesystem::path& out_dir, const Bundle& bundle);

std::string read_file(const std::filesystem::path& path);

/// Ordered key/value record serialized as TSV, one pair per line.
class Manifest {
public:
    void set(std::string key, std::string value);
    const std::string& get(const std::string& key) const;
    std::optional<std::string> find(const std::string& key) const;

    std::string serialize() const;
    static Manifest parse(std::string_view text);

private:
    std::vector<std::pair<std::string, std::string>> items_;
};

}  // namespace meshroute::cli
