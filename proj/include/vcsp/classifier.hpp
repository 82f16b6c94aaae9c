#pragma once

#include <vcsp/budget.hpp>
#include <vcsp/instance.hpp>
#include <vcsp/language.hpp>
#include <vcsp/polymorphism.hpp>
#include <vcsp/weighting.hpp>

#include <array>
#include <optional>
#include <string>
#include <vector>

namespace vcsp {

enum class Status
{
    NpHard,
    Tractable,
    ConjecturedTractable,
    Unknown
};

auto to_string(Status status) -> std::string;
auto status_from_string(const std::string & text) -> Status;

/// Why a candidate multimorphism is not admitted.
struct MultimorphismFailure
{
    std::string name;
    std::vector<Operation> operations;
    /// Function and tuple list where the improvement inequality breaks, or
    /// where a member operation leaves a feasibility relation.
    std::string function;
    std::vector<Tuple> tuples;
};

/// Two-element quotient of a subalgebra whose operations all act as
/// projections.  Elements are those of the original domain.
struct QuotientCertificate
{
    std::vector<int> subset;
    std::vector<int> class0;
    std::vector<int> class1;
    /// The operation sets (one per arity) the certificate was checked against.
    std::vector<OperationSet> checked;
};

struct Verdict
{
    std::string criterion;
    Status status = Status::Unknown;
    std::string note;

    /// Admitted multimorphism (Boolean criterion).
    std::string multimorphism_name;
    std::vector<Operation> multimorphism;
    std::vector<MultimorphismFailure> failures;

    /// Non-core language: a non-bijective unary member of the positive clone.
    std::optional<Operation> core_witness;
    std::optional<Weighting> core_weighting;

    /// Idempotent cyclic member of the positive clone of the rigid core.
    std::optional<Operation> cyclic;
    std::optional<Weighting> cyclic_weighting;
    /// Arities searched exhaustively for cyclic operations.
    std::vector<int> searched_arities;

    std::optional<QuotientCertificate> quotient;

    /// Conservative criterion.
    std::vector<Operation> binary;
    std::vector<Operation> ternary;
    std::vector<std::array<int, 2>> stp_pairs;
    std::uint64_t nodes = 0;
};

auto verdict_to_json(const Verdict & verdict) -> Json;
auto verdict_from_json(const Json & value, int domain_size, const std::string & where = "") -> Verdict;

/// min, max, Mjrty, Mnrty on {0,1}.
auto boolean_min() -> Operation;
auto boolean_max() -> Operation;
auto boolean_majority() -> Operation;
auto boolean_minority() -> Operation;

struct NamedMultimorphism
{
    std::string name;
    std::vector<Operation> operations;
};

/// The six tractable Boolean multimorphisms in their canonical order.
auto boolean_multimorphisms() -> std::vector<NamedMultimorphism>;

/// Failure witness if the language does not admit the multimorphism.
auto multimorphism_failure(const Language & language, const NamedMultimorphism & mm) -> std::optional<MultimorphismFailure>;

auto classify_boolean(const Language & language, const Budget & budget = {}) -> Verdict;

/// Searches the positive clone of the rigid core for idempotent cyclic
/// operations up to the least prime above the domain size.  Budget
/// exhaustion gives UNKNOWN.  Throws CoreRequired for non-cores.
auto hardness_certificate(const Language & language, const Budget & budget = {}) -> Verdict;

struct Formula
{
    std::vector<std::string> variables;
    std::vector<std::array<int, 3>> clauses;
};

auto formula_to_json(const Formula & formula) -> Json;
auto formula_from_json(const Json & value, const std::string & where = "") -> Formula;
auto random_formula(int variables, int clauses, std::uint64_t seed) -> Formula;

struct OneInThreeReduction
{
    Instance instance;
    CostFunction function;
    Relation relation;
    Rational P;
    /// Value the optimum takes exactly when the formula has a model.
    Rational target;
};

/// Tuples of S'^3 with exactly one coordinate in class 1.
auto one_in_three_relation(const QuotientCertificate & certificate) -> Relation;

/// `rigid` is the rigid core the certificate belongs to.  Throws
/// CertificateRequired without a quotient certificate.
auto reduce_one_in_three(const Language & rigid, const std::optional<QuotientCertificate> & certificate,
    const Formula & formula, const Budget & budget = {}) -> OneInThreeReduction;

/// True iff the language has every {0,1}-valued unary cost function.
auto is_conservative_language(const Language & language) -> bool;

auto classify_conservative(const Language & language, const Budget & budget = {}) -> Verdict;

struct Verification
{
    bool ok = true;
    std::string message;
};

/// Re-checks the evidence of a verdict against the language without
/// repeating any search.
auto verify_verdict(const Language & language, const Verdict & verdict) -> Verification;

} // namespace vcsp
