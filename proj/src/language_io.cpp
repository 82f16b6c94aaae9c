#include <vcsp/errors.hpp>
#include <vcsp/language_io.hpp>

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

namespace vcsp {

namespace json_fields
{
    auto child(const std::string & where, const std::string & key) -> std::string
    {
        return where.empty() ? key : where + "." + key;
    }

    auto child(const std::string & where, std::size_t index) -> std::string
    {
        return where + "[" + std::to_string(index) + "]";
    }

    auto check_keys(const Json & object, std::initializer_list<const char *> allowed, const std::string & where) -> void
    {
        if (! object.is_object())
            throw ParseError(where, "expected an object");
        for (const auto & [key, _] : object.items())
            if (std::none_of(allowed.begin(), allowed.end(), [&](const char * a) { return key == a; }))
                throw ParseError(child(where, key), "unknown field");
    }

    auto require(const Json & object, const char * key, const std::string & where) -> const Json &
    {
        auto it = object.find(key);
        if (it == object.end())
            throw ParseError(child(where, key), "missing field");
        return *it;
    }

    auto as_int(const Json & value, const std::string & where) -> long long
    {
        if (! value.is_number_integer())
            throw ParseError(where, "expected an integer");
        return value.get<long long>();
    }

    auto as_string(const Json & value, const std::string & where) -> std::string
    {
        if (! value.is_string())
            throw ParseError(where, "expected a string");
        return value.get<std::string>();
    }

    auto as_array(const Json & value, const std::string & where) -> const Json &
    {
        if (! value.is_array())
            throw ParseError(where, "expected a list");
        return value;
    }
}

using namespace json_fields;

auto parse_json(const std::string & text, const std::string & source) -> Json
{
    try {
        return Json::parse(text);
    }
    catch (const nlohmann::json::parse_error & e) {
        std::size_t line = 1, column = 1;
        for (std::size_t i = 0; i + 1 < e.byte && i < text.size(); ++i) {
            if (text[i] == '\n') {
                ++line;
                column = 1;
            }
            else
                ++column;
        }
        throw ParseError(source, "malformed JSON at line " + std::to_string(line) + ", column " + std::to_string(column));
    }
}

auto read_text_file(const std::string & path) -> std::string
{
    std::ifstream in(path, std::ios::binary);
    if (! in)
        throw ParseError(path, "cannot open file");
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

auto write_text_file(const std::string & path, const std::string & text) -> void
{
    std::ofstream out(path, std::ios::binary);
    if (! out)
        throw ParseError(path, "cannot write file");
    out << text;
}

auto dump_json(const Json & value) -> std::string
{
    return value.dump(2) + "\n";
}

auto language_to_json(const Language & language) -> Json
{
    Json functions = Json::array();
    for (const auto & f : language.functions) {
        Json values = Json::array();
        for (const auto & v : f.table)
            values.push_back(v.to_string());
        functions.push_back(Json{{"name", f.name}, {"arity", f.arity}, {"values", values}});
    }
    return Json{{"domain_size", language.domain_size}, {"cost_functions", functions}};
}

auto language_from_json(const Json & value, const std::string & where) -> Language
{
    check_keys(value, {"domain_size", "cost_functions"}, where);
    auto n = as_int(require(value, "domain_size", where), child(where, "domain_size"));
    if (n < 1 || n > 64)
        throw ParseError(child(where, "domain_size"), "domain size must be between 1 and 64");

    Language language;
    language.domain_size = static_cast<int>(n);
    auto list_where = child(where, "cost_functions");
    const auto & list = as_array(require(value, "cost_functions", where), list_where);
    std::set<std::string> names;
    for (std::size_t k = 0; k < list.size(); ++k) {
        auto fw = child(list_where, k);
        check_keys(list[k], {"name", "arity", "values"}, fw);
        auto name = as_string(require(list[k], "name", fw), child(fw, "name"));
        if (! names.insert(name).second)
            throw ParseError(child(fw, "name"), "duplicate cost function name '" + name + "'");
        auto arity = as_int(require(list[k], "arity", fw), child(fw, "arity"));
        if (arity < 1 || arity > 16)
            throw ParseError(child(fw, "arity"), "arity must be between 1 and 16");
        auto vw = child(fw, "values");
        const auto & values = as_array(require(list[k], "values", fw), vw);
        auto expected = power(n, arity);
        if (values.size() != expected)
            throw ParseError(vw, "length mismatch: " + std::to_string(values.size()) + " values, expected " + std::to_string(expected));
        std::vector<ExtendedRational> table;
        table.reserve(values.size());
        for (std::size_t i = 0; i < values.size(); ++i) {
            auto iw = child(vw, i);
            try {
                table.push_back(ExtendedRational::parse(as_string(values[i], iw)));
            }
            catch (const ParseError & e) {
                if (! e.where().empty())
                    throw;
                throw ParseError(iw, e.message());
            }
        }
        language.functions.emplace_back(name, language.domain_size, static_cast<int>(arity), std::move(table));
    }
    return language;
}

auto parse_language(const std::string & text) -> Language
{
    return language_from_json(parse_json(text));
}

auto serialize_language(const Language & language) -> std::string
{
    return dump_json(language_to_json(language));
}

auto load_language(const std::string & path) -> Language
{
    try {
        return parse_language(read_text_file(path));
    }
    catch (const ParseError & e) {
        throw ParseError(path + (e.where().empty() ? "" : ":" + e.where()), e.message());
    }
}

auto operation_to_json(const Operation & op) -> Json
{
    return Json{{"arity", op.arity}, {"table", op.table}};
}

auto operation_from_json(const Json & value, int domain_size, const std::string & where) -> Operation
{
    check_keys(value, {"arity", "table"}, where);
    auto arity = as_int(require(value, "arity", where), child(where, "arity"));
    if (arity < 1 || arity > 16)
        throw ParseError(child(where, "arity"), "arity must be between 1 and 16");
    auto tw = child(where, "table");
    const auto & table = as_array(require(value, "table", where), tw);
    if (table.size() != power(domain_size, arity))
        throw ParseError(tw, "length mismatch: " + std::to_string(table.size()) + " entries, expected " +
            std::to_string(power(domain_size, arity)));
    std::vector<int> entries;
    for (std::size_t i = 0; i < table.size(); ++i) {
        auto v = as_int(table[i], child(tw, i));
        if (v < 0 || v >= domain_size)
            throw ParseError(child(tw, i), "value outside the domain");
        entries.push_back(static_cast<int>(v));
    }
    return {domain_size, static_cast<int>(arity), std::move(entries)};
}

auto relation_to_json(const Relation & relation) -> Json
{
    Json result = Json::array();
    for (const auto & t : relation)
        result.push_back(t);
    return result;
}

auto relation_from_json(const Json & value, int domain_size, const std::string & where) -> Relation
{
    const auto & list = as_array(value, where);
    Relation relation;
    for (std::size_t k = 0; k < list.size(); ++k) {
        auto tw = child(where, k);
        const auto & t = as_array(list[k], tw);
        Tuple tuple;
        for (std::size_t i = 0; i < t.size(); ++i) {
            auto v = as_int(t[i], child(tw, i));
            if (v < 0 || v >= domain_size)
                throw ParseError(child(tw, i), "value outside the domain");
            tuple.push_back(static_cast<int>(v));
        }
        if (! relation.empty() && tuple.size() != relation.front().size())
            throw ParseError(tw, "tuples of a relation must share one arity");
        if (tuple.empty())
            throw ParseError(tw, "empty tuple");
        relation.push_back(std::move(tuple));
    }
    std::sort(relation.begin(), relation.end());
    relation.erase(std::unique(relation.begin(), relation.end()), relation.end());
    return relation;
}

} // namespace vcsp
