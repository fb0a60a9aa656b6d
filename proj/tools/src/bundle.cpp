#include "bundle.hpp"

#include <fstream>
#include <sstream>

#include "meshroute/errors.hpp"

namespace meshroute::cli {

void write_bundle(const std::filesystem::path& out_dir, const Bundle& bundle) {
    for (const auto& [name, content] : bundle.files) {
        const std::filesystem::path target = out_dir / name;
        std::filesystem::create_directories(target.parent_path());
        std::ofstream stream(target, std::ios::binary | std::ios::trunc);
        stream.write(content.data(), static_cast<std::streamsize>(content.size()));
        if (!stream) {
            throw Error("failed to write " + target.string());
        }
    }
}

std::string read_file(const std::filesystem::path& path) {
    std::ifstream stream(path, std::ios::binary);
    if (!stream) {
        throw FormatError("cannot read file '" + path.string() + "'");
    }
    std::ostringstream buffer;
    buffer << stream.rdbuf();
    return std::move(buffer).str();
}

void Manifest::set(std::string key, std::string value) {
    for (auto& [k, v] : items_) {
        if (k == key) {
            v = std::move(value);
            return;
        }
    }
    items_.emplace_back(std::move(key), std::move(value));
}

const std::string& Manifest::get(const std::string& key) const {
    for (const auto& [k, v] : items_) {
        if (k == key) {
            return v;
        }
    }
    throw ParameterError("manifest: missing key '" + key + "'");
}

std::optional<std::string> Manifest::find(const std::string& key) const {
    for (const auto& [k, v] : items_) {
        if (k == key) {
            return v;
        }
    }
    return std::nullopt;
}

std::string Manifest::serialize() const {
    std::string out;
    for (const auto& [k, v] : items_) {
        out += k;
        out.push_back('\t');
        out += v;
        out.push_back('\n');
    }
    return out;
}

Manifest Manifest::parse(std::string_view text) {
    Manifest manifest;
    std::size_t start = 0;
    std::size_t line_no = 0;
    while (start < text.size()) {
        ++line_no;
        const std::size_t end = std::min(text.find('\n', start), text.size());
        const std::string_view line = text.substr(start, end - start);
        start = end + 1;
        if (line.empty()) {
            continue;
        }
        const std::size_t tab = line.find('\t');
        if (tab == std::string_view::npos) {
            throw ParameterError("manifest line " + std::to_string(line_no) +
                                 ": expected key<TAB>value");
        }
        manifest.set(std::string(line.substr(0, tab)), std::string(line.substr(tab + 1)));
    }
    return manifest;
}

}  // namespace meshroute::cli
