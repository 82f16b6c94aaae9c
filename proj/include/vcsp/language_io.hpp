#pragma once

#include <vcsp/language.hpp>

#include <json.hpp>

#include <string>

namespace vcsp {

using Json = nlohmann::ordered_json;

/// Parses JSON text, reporting syntax errors as ParseError.
auto parse_json(const std::string & text, const std::string & source = "") -> Json;

auto read_text_file(const std::string & path) -> std::string;
auto write_text_file(const std::string & path, const std::string & text) -> void;

/// Canonical JSON text: two-space indentation and a trailing newline.
auto dump_json(const Json & value) -> std::string;

auto language_to_json(const Language & language) -> Json;
/// `where` prefixes every error location.
auto language_from_json(const Json & value, const std::string & where = "") -> Language;

auto parse_language(const std::string & text) -> Language;
auto serialize_language(const Language & language) -> std::string;
auto load_language(const std::string & path) -> Language;

auto operation_to_json(const Operation & op) -> Json;
auto operation_from_json(const Json & value, int domain_size, const std::string & where = "") -> Operation;

auto relation_to_json(const Relation & relation) -> Json;
auto relation_from_json(const Json & value, int domain_size, const std::string & where = "") -> Relation;

/// Helpers shared by the file readers.
namespace json_fields
{
    /// Throws ParseError naming the first key of `object` not in `allowed`.
    auto check_keys(const Json & object, std::initializer_list<const char *> allowed, const std::string & where) -> void;
    auto require(const Json & object, const char * key, const std::string & where) -> const Json &;
    auto as_int(const Json & value, const std::string & where) -> long long;
    auto as_string(const Json & value, const std::string & where) -> std::string;
    auto as_array(const Json & value, const std::string & where) -> const Json &;
    auto child(const std::string & where, const std::string & key) -> std::string;
    auto child(const std::string & where, std::size_t index) -> std::string;
}

} // namespace vcsp
