#include <fstream>
#include <sstream>

#include <json.hpp>

#include "brx/ilp.hpp"

namespace brx {

namespace {

// nlohmann reports a byte offset; the contract wants line/column.
std::pair<std::size_t, std::size_t> line_column(std::string_view text, std::size_t byte) {
    std::size_t line = 1, col = 1;
    for (std::size_t k = 0; k < byte && k < text.size(); ++k) {
        if (text[k] == '\n') {
            ++line;
            col = 1;
        } else {
            ++col;
        }
    }
    return {line, col};
}

[[noreturn]] void fail_parse(std::string_view text, std::size_t byte, const std::string& what) {
    const auto [line, col] = line_column(text, byte);
    fail(Status::parse_error,
         "line " + std::to_string(line) + ", column " + std::to_string(col) + ": " + what);
}

double number_at(const nlohmann::json& v, std::string_view text, const char* where) {
    if (!v.is_number()) fail_parse(text, 0, std::string(where) + " must be a number");
    return v.get<double>();
}

} // namespace

IlpInstance parse_instance_json(std::string_view text) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        // e.byte is 1-based position of the offending character
        fail_parse(text, e.byte > 0 ? e.byte - 1 : 0, e.what());
    }
    if (!doc.is_object()) fail_parse(text, 0, "top level must be an object");
    for (const auto& item : doc.items()) {
        if (item.key() != "a" && item.key() != "b" && item.key() != "c")
            fail_parse(text, 0, "unknown key \"" + item.key() + "\"");
    }
    if (!doc.contains("a") || !doc.contains("b") || !doc.contains("c"))
        fail_parse(text, 0, "document must contain exactly the keys \"a\", \"b\", \"c\"");
    if (!doc["a"].is_array() || !doc["b"].is_array() || !doc["c"].is_array())
        fail_parse(text, 0, "\"a\", \"b\", \"c\" must be arrays");

    std::vector<std::vector<double>> a;
    for (const auto& row : doc["a"]) {
        if (!row.is_array()) fail_parse(text, 0, "\"a\" must be an array of arrays");
        std::vector<double> r;
        for (const auto& v : row) r.push_back(number_at(v, text, "entry of \"a\""));
        a.push_back(std::move(r));
    }
    std::vector<double> b, c;
    for (const auto& v : doc["b"]) b.push_back(number_at(v, text, "entry of \"b\""));
    for (const auto& v : doc["c"]) c.push_back(number_at(v, text, "entry of \"c\""));

    try {
        return IlpInstance(std::move(a), std::move(b), std::move(c));
    } catch (const Error& e) {
        // shape/validation problems on parsed input count as parse errors
        fail(Status::parse_error, e.what());
    }
}

IlpInstance load_instance_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) fail(Status::parse_error, "cannot open instance file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_instance_json(ss.str());
}

std::string instance_to_json(const IlpInstance& inst) {
    nlohmann::json doc;
    auto& a = doc["a"];
    for (std::size_t i = 0; i < inst.rows(); ++i) {
        nlohmann::json row = nlohmann::json::array();
        for (std::size_t j = 0; j < inst.cols(); ++j) row.push_back(inst.a(i, j));
        a.push_back(row);
    }
    doc["b"] = inst.b();
    doc["c"] = inst.c();
    return doc.dump();
}

} // namespace brx
