#include <vcsp/errors.hpp>
#include <vcsp/linear_system.hpp>

#include <optional>
#include <string>

namespace vcsp {

auto LinearSystem::validate() const -> void
{
    for (std::size_t j = 0; j < rows.size(); ++j)
        if (rows[j].coefficients.size() != num_vars)
            throw StructuralError("row " + std::to_string(j) + " has " + std::to_string(rows[j].coefficients.size()) +
                " coefficients, expected " + std::to_string(num_vars));
}

namespace
{
    // Dense phase-one tableau.  Column layout: the system variables, then C+ and
    // C- when the free constant is present, then one surplus column per GEQ
    // row, then artificial columns for the rows that need one.
    class PhaseOne
    {
    public:
        explicit PhaseOne(const LinearSystem & system) :
            _system(system)
        {
            const auto n_rows = system.rows.size();
            _constant_column = system.num_vars;
            std::size_t next = system.num_vars + (system.has_free_constant ? 2 : 0);

            std::vector<std::optional<std::size_t>> surplus(n_rows);
            for (std::size_t j = 0; j < n_rows; ++j)
                if (system.rows[j].kind == RowKind::Geq)
                    surplus[j] = next++;

            _sign.assign(n_rows, 1);
            _identity_column.assign(n_rows, 0);
            std::vector<bool> needs_artificial(n_rows, false);
            for (std::size_t j = 0; j < n_rows; ++j) {
                const auto & row = system.rows[j];
                if (row.kind == RowKind::Geq && sgn(row.rhs) <= 0) {
                    _sign[j] = -1;
                    _identity_column[j] = *surplus[j];
                }
                else {
                    _sign[j] = sgn(row.rhs) < 0 ? -1 : 1;
                    needs_artificial[j] = true;
                }
            }
            for (std::size_t j = 0; j < n_rows; ++j)
                if (needs_artificial[j]) {
                    _identity_column[j] = next;
                    _artificial_begin = std::min(_artificial_begin, next);
                    ++next;
                }
            _artificial_begin = std::min(_artificial_begin, next);
            _n_cols = next;

            _tableau.assign(n_rows, std::vector<Rational>(_n_cols));
            _rhs.resize(n_rows);
            _basis.resize(n_rows);
            for (std::size_t j = 0; j < n_rows; ++j) {
                const auto & row = system.rows[j];
                auto & t = _tableau[j];
                for (std::size_t i = 0; i < system.num_vars; ++i)
                    t[i] = row.coefficients[i] * _sign[j];
                if (system.has_free_constant) {
                    t[_constant_column] = -_sign[j];
                    t[_constant_column + 1] = _sign[j];
                }
                if (surplus[j])
                    t[*surplus[j]] = -_sign[j];
                t[_identity_column[j]] = 1;
                _rhs[j] = row.rhs * _sign[j];
                _basis[j] = _identity_column[j];
            }

            _reduced.assign(_n_cols, Rational(0));
            _objective_rhs = 0;
            for (std::size_t k = _artificial_begin; k < _n_cols; ++k)
                _reduced[k] = 1;
            for (std::size_t j = 0; j < n_rows; ++j)
                if (is_artificial(_basis[j])) {
                    for (std::size_t k = 0; k < _n_cols; ++k)
                        if (sgn(_tableau[j][k]) != 0)
                            _reduced[k] -= _tableau[j][k];
                    _objective_rhs -= _rhs[j];
                }
        }

        auto run() -> FarkasResult
        {
            while (true) {
                std::optional<std::size_t> entering;
                for (std::size_t k = 0; k < _n_cols; ++k)
                    if (sgn(_reduced[k]) < 0) {
                        entering = k;
                        break;
                    }
                if (! entering)
                    break;

                std::optional<std::size_t> leaving;
                Rational best_ratio, ratio;
                for (std::size_t j = 0; j < _tableau.size(); ++j) {
                    if (sgn(_tableau[j][*entering]) <= 0)
                        continue;
                    ratio = _rhs[j] / _tableau[j][*entering];
                    if (! leaving || ratio < best_ratio || (ratio == best_ratio && _basis[j] < _basis[*leaving])) {
                        leaving = j;
                        best_ratio = ratio;
                    }
                }
                if (! leaving)
                    throw InternalError("phase-one simplex reported an unbounded ray");
                pivot(*leaving, *entering);
            }

            if (sgn(_objective_rhs) < 0)
                return certificate();
            return solution();
        }

    private:
        auto is_artificial(std::size_t column) const -> bool { return column >= _artificial_begin; }

        auto pivot(std::size_t row, std::size_t column) -> void
        {
            auto & pivot_row = _tableau[row];
            const Rational pivot_value = pivot_row[column];
            std::vector<std::size_t> support;
            for (std::size_t k = 0; k < _n_cols; ++k)
                if (sgn(pivot_row[k]) != 0) {
                    pivot_row[k] /= pivot_value;
                    support.push_back(k);
                }
            _rhs[row] /= pivot_value;

            mpq_t product;
            mpq_init(product);
            auto eliminate = [&](std::vector<Rational> & target, Rational & target_rhs) {
                if (sgn(target[column]) == 0)
                    return;
                const Rational factor = target[column];
                for (auto k : support) {
                    mpq_mul(product, factor.get_mpq_t(), pivot_row[k].get_mpq_t());
                    mpq_sub(target[k].get_mpq_t(), target[k].get_mpq_t(), product);
                }
                mpq_mul(product, factor.get_mpq_t(), _rhs[row].get_mpq_t());
                mpq_sub(target_rhs.get_mpq_t(), target_rhs.get_mpq_t(), product);
            };
            for (std::size_t j = 0; j < _tableau.size(); ++j)
                if (j != row)
                    eliminate(_tableau[j], _rhs[j]);
            eliminate(_reduced, _objective_rhs);
            mpq_clear(product);

            _basis[row] = column;
        }

        auto certificate() const -> FarkasCertificate
        {
            FarkasCertificate result;
            result.multipliers.reserve(_tableau.size());
            for (std::size_t j = 0; j < _tableau.size(); ++j) {
                auto column = _identity_column[j];
                Rational cost = is_artificial(column) ? 1 : 0;
                result.multipliers.emplace_back((cost - _reduced[column]) * _sign[j]);
            }
            return result;
        }

        auto solution() const -> FarkasSolution
        {
            std::vector<Rational> column_values(_n_cols, Rational(0));
            for (std::size_t j = 0; j < _tableau.size(); ++j)
                column_values[_basis[j]] = _rhs[j];

            FarkasSolution result;
            result.values.assign(column_values.begin(), column_values.begin() + _system.num_vars);
            if (_system.has_free_constant)
                result.constant = column_values[_constant_column] - column_values[_constant_column + 1];
            return result;
        }

        const LinearSystem & _system;
        std::size_t _constant_column = 0;
        std::size_t _artificial_begin = static_cast<std::size_t>(-1);
        std::size_t _n_cols = 0;
        std::vector<int> _sign;
        std::vector<std::size_t> _identity_column;
        std::vector<std::vector<Rational>> _tableau;
        std::vector<Rational> _rhs;
        std::vector<std::size_t> _basis;
        std::vector<Rational> _reduced;
        Rational _objective_rhs;
    };
}

auto solve_farkas(const LinearSystem & system) -> FarkasResult
{
    system.validate();
    auto result = PhaseOne(system).run();
    if (auto * s = std::get_if<FarkasSolution>(&result); s && ! satisfies(system, *s))
        throw InternalError("simplex solution failed exact verification");
    if (auto * c = std::get_if<FarkasCertificate>(&result); c && ! certifies(system, *c))
        throw InternalError("simplex certificate failed exact verification");
    return result;
}

auto satisfies(const LinearSystem & system, const FarkasSolution & solution) -> bool
{
    if (solution.values.size() != system.num_vars)
        return false;
    if (! system.has_free_constant && sgn(solution.constant) != 0)
        return false;
    for (const auto & v : solution.values)
        if (sgn(v) < 0)
            return false;
    for (const auto & row : system.rows) {
        Rational lhs = 0;
        for (std::size_t i = 0; i < system.num_vars; ++i)
            lhs += row.coefficients[i] * solution.values[i];
        Rational rhs = row.rhs + solution.constant;
        if (row.kind == RowKind::Eq ? lhs != rhs : lhs < rhs)
            return false;
    }
    return true;
}

auto certifies(const LinearSystem & system, const FarkasCertificate & certificate) -> bool
{
    const auto & y = certificate.multipliers;
    if (y.size() != system.rows.size())
        return false;
    Rational total = 0, objective = 0;
    for (std::size_t j = 0; j < y.size(); ++j) {
        if (system.rows[j].kind == RowKind::Geq && sgn(y[j]) < 0)
            return false;
        total += y[j];
        objective += y[j] * system.rows[j].rhs;
    }
    if (system.has_free_constant && sgn(total) != 0)
        return false;
    if (sgn(objective) <= 0)
        return false;
    for (std::size_t i = 0; i < system.num_vars; ++i) {
        Rational column = 0;
        for (std::size_t j = 0; j < y.size(); ++j)
            column += y[j] * system.rows[j].coefficients[i];
        if (sgn(column) > 0)
            return false;
    }
    return true;
}

namespace
{
    auto check_homogeneous(const LinearSystem & system) -> void
    {
        system.validate();
        for (std::size_t j = 0; j < system.rows.size(); ++j)
            if (system.rows[j].kind != RowKind::Eq || sgn(system.rows[j].rhs) != 0)
                throw StructuralError("row " + std::to_string(j) + " is not a homogeneous equation");
    }
}

auto solve_gordan(const LinearSystem & system) -> GordanResult
{
    check_homogeneous(system);

    // z >= 0, z != 0 is scaled to  sum z >= 1.
    LinearSystem scaled;
    scaled.num_vars = system.num_vars;
    scaled.has_free_constant = false;
    scaled.rows = system.rows;
    scaled.rows.push_back({std::vector<Rational>(system.num_vars, Rational(1)), Rational(1), RowKind::Geq});

    auto result = solve_farkas(scaled);
    if (auto * s = std::get_if<FarkasSolution>(&result))
        return GordanSolution{std::move(s->values)};

    const auto & y = std::get<FarkasCertificate>(result).multipliers;
    GordanSeparator separator;
    for (std::size_t j = 0; j < system.rows.size(); ++j)
        separator.multipliers.emplace_back(-y[j]);
    if (! certifies(system, separator))
        throw InternalError("Gordan separator failed exact verification");
    return separator;
}

auto satisfies(const LinearSystem & system, const GordanSolution & solution) -> bool
{
    if (solution.values.size() != system.num_vars)
        return false;
    bool positive = false;
    for (const auto & v : solution.values) {
        if (sgn(v) < 0)
            return false;
        positive = positive || sgn(v) > 0;
    }
    if (! positive)
        return false;
    for (const auto & row : system.rows) {
        Rational lhs = 0;
        for (std::size_t i = 0; i < system.num_vars; ++i)
            lhs += row.coefficients[i] * solution.values[i];
        if (sgn(lhs) != 0)
            return false;
    }
    return true;
}

auto certifies(const LinearSystem & system, const GordanSeparator & separator) -> bool
{
    if (separator.multipliers.size() != system.rows.size())
        return false;
    for (std::size_t i = 0; i < system.num_vars; ++i) {
        Rational column = 0;
        for (std::size_t j = 0; j < system.rows.size(); ++j)
            column += separator.multipliers[j] * system.rows[j].coefficients[i];
        if (sgn(column) <= 0)
            return false;
    }
    return true;
}

} // namespace vcsp
