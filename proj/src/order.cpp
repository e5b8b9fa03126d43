#include "ivp/order.hpp"

#include "ivp/error.hpp"

#include <fstream>

namespace ivp {

IntVector AlgebraElement::numerator() const
{
    Integer d = denominator();
    IntVector v;
    v.reserve(coords.size());
    for (const auto& c : coords)
        v.push_back(Rational(c * d).get_num());
    return v;
}

AlgebraElement AlgebraElement::operator+(const AlgebraElement& o) const
{
    if (o.dim() != dim())
        throw Error(ErrorCode::DimensionMismatch, "element sum");
    AlgebraElement r = *this;
    for (std::size_t i = 0; i < dim(); ++i)
        r.coords[i] += o.coords[i];
    return r;
}

AlgebraElement AlgebraElement::operator-(const AlgebraElement& o) const
{
    if (o.dim() != dim())
        throw Error(ErrorCode::DimensionMismatch, "element difference");
    AlgebraElement r = *this;
    for (std::size_t i = 0; i < dim(); ++i)
        r.coords[i] -= o.coords[i];
    return r;
}

AlgebraElement AlgebraElement::operator*(const Rational& c) const
{
    AlgebraElement r = *this;
    for (auto& x : r.coords)
        x *= c;
    return r;
}

ZOrder::ZOrder(std::vector<std::string> names, IntVector one, Table table)
    : names_(std::move(names)), one_(std::move(one)), table_(std::move(table))
{
    std::size_t n = one_.size();
    if (n == 0)
        throw Error(ErrorCode::MalformedInput, "order of dimension 0");
    if (names_.empty())
        for (std::size_t i = 0; i < n; ++i)
            names_.push_back("b" + std::to_string(i + 1));
    if (names_.size() != n)
        throw Error(ErrorCode::MalformedInput, "basis_names has the wrong length");
    if (table_.size() != n)
        throw Error(ErrorCode::MalformedInput, "table must have dim rows");
    for (const auto& row : table_) {
        if (row.size() != n)
            throw Error(ErrorCode::MalformedInput, "table rows must have dim entries");
        for (const auto& v : row)
            if (v.size() != n)
                throw Error(ErrorCode::MalformedInput, "table entries must be coordinate vectors of length dim");
    }

    /* With integer structure constants a genuine identity is automatically
     * primitive; a non-primitive declared unit means A does not meet Q in Z. */
    if (content(one_) != 1)
        throw Error(ErrorCode::UnitLineNotSaturated,
                    "(1/" + content(one_).get_str() + ")*one lies in the lattice, so A meets Q beyond Z");

    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            for (std::size_t k = 0; k < n; ++k) {
                IntVector lhs(n, 0), rhs(n, 0);
                for (std::size_t l = 0; l < n; ++l) {
                    const Integer& a = table_[i][j][l];
                    if (a != 0)
                        for (std::size_t m = 0; m < n; ++m)
                            lhs[m] += a * table_[l][k][m];
                    const Integer& b = table_[j][k][l];
                    if (b != 0)
                        for (std::size_t m = 0; m < n; ++m)
                            rhs[m] += b * table_[i][l][m];
                }
                if (lhs != rhs)
                    throw Error(ErrorCode::NonAssociative, "(b" + std::to_string(i + 1) + "*b" + std::to_string(j + 1) +
                                                               ")*b" + std::to_string(k + 1) + " != b" +
                                                               std::to_string(i + 1) + "*(b" + std::to_string(j + 1) +
                                                               "*b" + std::to_string(k + 1) + ")");
            }

    AlgebraElement u = this->one();
    for (std::size_t i = 0; i < n; ++i) {
        AlgebraElement b = basis_element(i);
        if (mul(u, b) != b || mul(b, u) != b)
            throw Error(ErrorCode::NoIdentity, "declared one is not a two-sided identity on b" + std::to_string(i + 1));
    }
}

AlgebraElement ZOrder::basis_element(std::size_t i) const
{
    RatVector v(dim(), 0);
    v.at(i) = 1;
    return AlgebraElement(std::move(v));
}

AlgebraElement ZOrder::mul(const AlgebraElement& x, const AlgebraElement& y) const
{
    std::size_t n = dim();
    if (x.dim() != n || y.dim() != n)
        throw Error(ErrorCode::DimensionMismatch, "product of elements of the wrong dimension");
    RatVector r(n, 0);
    Rational c;
    for (std::size_t i = 0; i < n; ++i) {
        if (x.coords[i] == 0)
            continue;
        for (std::size_t j = 0; j < n; ++j) {
            if (y.coords[j] == 0)
                continue;
            c = x.coords[i] * y.coords[j];
            const IntVector& t = table_[i][j];
            for (std::size_t k = 0; k < n; ++k)
                if (t[k] != 0)
                    r[k] += c * t[k];
        }
    }
    return AlgebraElement(std::move(r));
}

AlgebraElement ZOrder::pow(const AlgebraElement& x, unsigned long e) const
{
    AlgebraElement result = one(), base = x;
    while (e) {
        if (e & 1)
            result = mul(result, base);
        e >>= 1;
        if (e)
            base = mul(base, base);
    }
    return result;
}

IntVector ZOrder::mul_mod(const IntVector& x, const IntVector& y, const Integer& m) const
{
    std::size_t n = dim();
    IntVector r(n, 0);
    Integer c;
    for (std::size_t i = 0; i < n; ++i) {
        if (x[i] == 0)
            continue;
        for (std::size_t j = 0; j < n; ++j) {
            if (y[j] == 0)
                continue;
            c = x[i] * y[j];
            for (std::size_t k = 0; k < n; ++k)
                if (table_[i][j][k] != 0)
                    r[k] += c * table_[i][j][k];
        }
    }
    for (auto& v : r)
        mpz_fdiv_r(v.get_mpz_t(), v.get_mpz_t(), m.get_mpz_t());
    return r;
}

bool ZOrder::contains(const AlgebraElement& x) const
{
    if (x.dim() != dim())
        throw Error(ErrorCode::DimensionMismatch, "membership of an element of the wrong dimension");
    return is_integral(x.coords);
}

linalg::RatMatrix ZOrder::left_regular(const AlgebraElement& x) const
{
    linalg::RatMatrix m;
    for (std::size_t j = 0; j < dim(); ++j)
        m.push_back(mul(x, basis_element(j)).coords);
    return m;
}

linalg::RatMatrix ZOrder::right_regular(const AlgebraElement& x) const
{
    linalg::RatMatrix m;
    for (std::size_t j = 0; j < dim(); ++j)
        m.push_back(mul(basis_element(j), x).coords);
    return m;
}

Rational ZOrder::trace(const AlgebraElement& x) const
{
    Rational t = 0;
    for (std::size_t j = 0; j < dim(); ++j)
        t += mul(x, basis_element(j)).coords[j];
    return t;
}

nlohmann::ordered_json ZOrder::to_json() const
{
    nlohmann::ordered_json doc;
    doc["dim"] = dim();
    doc["basis_names"] = names_;
    auto ints = [](const IntVector& v) {
        nlohmann::ordered_json a = nlohmann::ordered_json::array();
        for (const auto& x : v)
            a.push_back(x.fits_slong_p() ? nlohmann::ordered_json(x.get_si()) : nlohmann::ordered_json(x.get_str()));
        return a;
    };
    doc["one"] = ints(one_);
    nlohmann::ordered_json t = nlohmann::ordered_json::array();
    for (const auto& row : table_) {
        nlohmann::ordered_json r = nlohmann::ordered_json::array();
        for (const auto& v : row)
            r.push_back(ints(v));
        t.push_back(r);
    }
    doc["table"] = t;
    return doc;
}

namespace {

Integer json_integer(const nlohmann::json& j)
{
    if (j.is_number_integer())
        return Integer(j.get<long>());
    if (j.is_string()) {
        try {
            return Integer(j.get<std::string>());
        } catch (const std::invalid_argument&) {
        }
    }
    throw Error(ErrorCode::MalformedInput, "expected an integer, got " + j.dump());
}

IntVector json_int_vector(const nlohmann::json& j, std::size_t n, const char* what)
{
    if (!j.is_array() || j.size() != n)
        throw Error(ErrorCode::MalformedInput, std::string(what) + " must be an array of length " + std::to_string(n));
    IntVector v;
    for (const auto& x : j)
        v.push_back(json_integer(x));
    return v;
}

} // namespace

ZOrder load_order(const nlohmann::json& doc)
{
    if (!doc.is_object() || !doc.contains("dim") || !doc.contains("one") || !doc.contains("table"))
        throw Error(ErrorCode::MalformedInput, "order document needs dim, one and table");
    if (!doc["dim"].is_number_integer() || doc["dim"].get<long>() < 1)
        throw Error(ErrorCode::MalformedInput, "dim must be a positive integer");
    std::size_t n = doc["dim"].get<std::size_t>();
    std::vector<std::string> names;
    if (doc.contains("basis_names")) {
        const auto& bn = doc["basis_names"];
        if (!bn.is_array() || bn.size() != n)
            throw Error(ErrorCode::MalformedInput, "basis_names must list dim names");
        for (const auto& s : bn) {
            if (!s.is_string())
                throw Error(ErrorCode::MalformedInput, "basis names must be strings");
            names.push_back(s.get<std::string>());
        }
    }
    IntVector one = json_int_vector(doc["one"], n, "one");
    const auto& t = doc["table"];
    if (!t.is_array() || t.size() != n)
        throw Error(ErrorCode::MalformedInput, "table must have dim rows");
    ZOrder::Table table;
    for (const auto& row : t) {
        if (!row.is_array() || row.size() != n)
            throw Error(ErrorCode::MalformedInput, "table rows must have dim entries");
        std::vector<IntVector> r;
        for (const auto& v : row)
            r.push_back(json_int_vector(v, n, "table entry"));
        table.push_back(std::move(r));
    }
    return ZOrder(std::move(names), std::move(one), std::move(table));
}

ZOrder load_order_file(const std::string& path)
{
    std::ifstream in(path);
    if (!in)
        throw Error(ErrorCode::MalformedInput, "cannot open " + path);
    nlohmann::json doc;
    try {
        in >> doc;
    } catch (const nlohmann::json::exception& e) {
        throw Error(ErrorCode::MalformedInput, path + ": " + e.what());
    }
    return load_order(doc);
}

ZOrder product_order(const ZOrder& a, const ZOrder& b)
{
    std::size_t n = a.dim(), m = b.dim();
    std::vector<std::string> names;
    for (const auto& s : a.basis_names())
        names.push_back(s + "_1");
    for (const auto& s : b.basis_names())
        names.push_back(s + "_2");
    IntVector one(n + m, 0);
    for (std::size_t i = 0; i < n; ++i)
        one[i] = a.one_coords()[i];
    for (std::size_t i = 0; i < m; ++i)
        one[n + i] = b.one_coords()[i];
    ZOrder::Table t(n + m, std::vector<IntVector>(n + m, IntVector(n + m, 0)));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            for (std::size_t k = 0; k < n; ++k)
                t[i][j][k] = a.table(i, j)[k];
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < m; ++j)
            for (std::size_t k = 0; k < m; ++k)
                t[n + i][n + j][n + k] = b.table(i, j)[k];
    return ZOrder(std::move(names), std::move(one), std::move(t));
}

AlgebraElement EmbeddedOrder::to_ambient(const AlgebraElement& x) const
{
    return AlgebraElement(linalg::apply(x.coords, basis));
}

std::optional<AlgebraElement> EmbeddedOrder::from_ambient(const AlgebraElement& x) const
{
    auto c = linalg::solve_left(basis, x.coords);
    if (!c)
        return std::nullopt;
    return AlgebraElement(std::move(*c));
}

EmbeddedOrder order_from_lattice(const ZOrder& ambient, const linalg::RatMatrix& basis, const AlgebraElement& one)
{
    std::size_t r = basis.size();
    if (r == 0 || linalg::rank(basis) != r)
        throw Error(ErrorCode::PreconditionFailed, "order basis must be nonempty and independent");
    auto coords_of = [&](const RatVector& v) -> IntVector {
        auto c = linalg::solve_left(basis, v);
        if (!c || !is_integral(*c))
            throw Error(ErrorCode::PreconditionFailed, "lattice is not closed under multiplication");
        return to_integer(*c);
    };
    ZOrder::Table t(r, std::vector<IntVector>(r));
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < r; ++j)
            t[i][j] = coords_of(ambient.mul(AlgebraElement(basis[i]), AlgebraElement(basis[j])).coords);
    IntVector u = coords_of(one.coords);
    return EmbeddedOrder{ZOrder({}, std::move(u), std::move(t)), basis};
}

AlgebraElement mul(const ZOrder& a, const AlgebraElement& x, const AlgebraElement& y) { return a.mul(x, y); }

AlgebraElement evaluate(const ZOrder& a, const RationalPolynomial& f, const AlgebraElement& x)
{
    AlgebraElement acc = a.zero();
    AlgebraElement one = a.one();
    const auto& c = f.coefficients();
    for (auto it = c.rbegin(); it != c.rend(); ++it) {
        acc = a.mul(acc, x);
        if (*it != 0)
            acc = acc + one * *it;
    }
    return acc;
}

RationalPolynomial minimal_polynomial(const ZOrder& a, const AlgebraElement& b)
{
    linalg::RatMatrix powers;
    AlgebraElement cur = a.one();
    for (std::size_t k = 0; k <= a.dim(); ++k) {
        if (!powers.empty()) {
            if (auto rel = linalg::solve_left(powers, cur.coords)) {
                std::vector<Rational> mu(k + 1, 0);
                for (std::size_t i = 0; i < k; ++i)
                    mu[i] = -(*rel)[i];
                mu[k] = 1;
                return RationalPolynomial(std::move(mu));
            }
        }
        powers.push_back(cur.coords);
        cur = a.mul(cur, b);
    }
    throw Error(ErrorCode::InternalError, "no linear relation among the first dim+1 powers");
}

RationalPolynomial characteristic_polynomial(const ZOrder& a, const AlgebraElement& b)
{
    return charpoly(a.left_regular(b));
}

CommutativityResult is_commutative(const ZOrder& a)
{
    for (std::size_t i = 0; i < a.dim(); ++i)
        for (std::size_t j = i + 1; j < a.dim(); ++j)
            if (a.table(i, j) != a.table(j, i))
                return {false, i, j};
    return {};
}

linalg::IntMatrix trace_gram(const ZOrder& a)
{
    std::size_t n = a.dim();
    /* Tr(L_{b_k}) once per basis element, then linearity. */
    IntVector tr(n);
    for (std::size_t k = 0; k < n; ++k) {
        Integer t = 0;
        for (std::size_t j = 0; j < n; ++j)
            t += a.table(k, j)[j];
        tr[k] = t;
    }
    linalg::IntMatrix g(n, IntVector(n, 0));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            for (std::size_t k = 0; k < n; ++k)
                g[i][j] += a.table(i, j)[k] * tr[k];
    return g;
}

Integer discriminant(const ZOrder& a) { return linalg::determinant(trace_gram(a)); }

linalg::RatMatrix jacobson_radical_b(const ZOrder& a)
{
    return linalg::left_kernel(linalg::to_rational(trace_gram(a)));
}

unsigned nilpotency_index(const ZOrder& a, const AlgebraElement& x)
{
    AlgebraElement cur = x;
    for (unsigned k = 1; k <= a.dim() + 1; ++k) {
        if (cur.is_zero())
            return k;
        cur = a.mul(cur, x);
    }
    return 0;
}

ReducedResult is_reduced(const ZOrder& a)
{
    linalg::RatMatrix rad = jacobson_radical_b(a);
    if (rad.empty()) {
        ReducedResult r;
        r.status = is_commutative(a).commutative ? Reducedness::Reduced : Reducedness::UndecidedSemisimple;
        return r;
    }
    /* First radical basis vector, cleared to a primitive vector of A. */
    AlgebraElement w(rad.front());
    IntVector num = w.numerator();
    Integer c = content(num);
    for (auto& x : num)
        x /= c;
    AlgebraElement witness(num);
    unsigned k = nilpotency_index(a, witness);
    if (k == 0)
        throw Error(ErrorCode::InternalError, "trace-form radical element is not nilpotent");
    return {Reducedness::NotReduced, witness, k};
}

} // namespace ivp
