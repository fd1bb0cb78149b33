#include "permround/io.hpp"

#include <fstream>
#include <iomanip>
#include <istream>
#include <ostream>
#include <sstream>

#include "permround/errors.hpp"

namespace permround {
namespace {

RowMatrixXd read_rows(std::istream& in, Eigen::Index n, const char* what) {
    RowMatrixXd m(n, n);
    for (Eigen::Index i = 0; i < n; ++i) {
        for (Eigen::Index j = 0; j < n; ++j) {
            if (!(in >> m(i, j))) {
                throw ParseError(std::string(what) + ": expected " + std::to_string(n * n) +
                                 " numeric entries");
            }
        }
    }
    return m;
}

Eigen::Index read_dimension(std::istream& in, const char* what) {
    long long n = 0;
    if (!(in >> n) || n < 1) {
        throw ParseError(std::string(what) + ": expected a positive dimension on the first line");
    }
    return static_cast<Eigen::Index>(n);
}

RowMatrixXd rows_from_json(const nlohmann::json& rows, Eigen::Index n, const char* what) {
    if (!rows.is_array() || static_cast<Eigen::Index>(rows.size()) != n) {
        throw ParseError(std::string(what) + ": expected " + std::to_string(n) + " rows");
    }
    RowMatrixXd m(n, n);
    for (Eigen::Index i = 0; i < n; ++i) {
        const auto& row = rows[static_cast<std::size_t>(i)];
        if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != n) {
            throw ParseError(std::string(what) + ": ragged row");
        }
        for (Eigen::Index j = 0; j < n; ++j) {
            const auto& v = row[static_cast<std::size_t>(j)];
            if (!v.is_number()) throw ParseError(std::string(what) + ": non-numeric entry");
            m(i, j) = v.get<double>();
        }
    }
    return m;
}

nlohmann::json rows_to_json(const RowMatrixXd& m) {
    nlohmann::json rows = nlohmann::json::array();
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        nlohmann::json row = nlohmann::json::array();
        for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
        rows.push_back(std::move(row));
    }
    return rows;
}

nlohmann::json parse_json_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open " + path.string());
    try {
        return nlohmann::json::parse(in);
    } catch (const nlohmann::json::parse_error& e) {
        throw ParseError(path.string() + ": " + e.what());
    }
}

}  // namespace

SquareMatrix read_matrix_text(std::istream& in) {
    const Eigen::Index n = read_dimension(in, "matrix");
    return SquareMatrix(read_rows(in, n, "matrix"));
}

void write_matrix_text(std::ostream& out, const SquareMatrix& m) {
    out << m.n() << '\n' << std::setprecision(17);
    for (Eigen::Index i = 0; i < m.n(); ++i) {
        for (Eigen::Index j = 0; j < m.n(); ++j) {
            if (j > 0) out << ' ';
            out << m(i, j);
        }
        out << '\n';
    }
}

SquareMatrix matrix_from_json(const nlohmann::json& j) {
    if (!j.is_object() || !j.contains("n") || !j.contains("rows") ||
        !j["n"].is_number_integer() || j["n"].get<long long>() < 1) {
        throw ParseError("matrix JSON: expected {\"n\": ..., \"rows\": [[...]]}");
    }
    const auto n = static_cast<Eigen::Index>(j["n"].get<long long>());
    return SquareMatrix(rows_from_json(j["rows"], n, "matrix JSON"));
}

nlohmann::json matrix_to_json(const SquareMatrix& m) {
    return nlohmann::json{{"n", m.n()}, {"rows", rows_to_json(m.mat())}};
}

SquareMatrix load_matrix_file(const std::filesystem::path& path) {
    if (path.extension() == ".json") return matrix_from_json(parse_json_file(path));
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open " + path.string());
    return read_matrix_text(in);
}

void save_matrix_file(const std::filesystem::path& path, const SquareMatrix& m) {
    std::ofstream out(path);
    if (!out) throw ParseError("cannot open " + path.string() + " for writing");
    if (path.extension() == ".json") {
        out << matrix_to_json(m).dump(2) << '\n';
    } else {
        write_matrix_text(out, m);
    }
}

Permutation read_permutation_text(std::istream& in) {
    std::string line;
    while (std::getline(in, line)) {
        if (line.find_first_not_of(" \t\r") != std::string::npos) {
            return Permutation::parse_one_line(line);
        }
    }
    throw ParseError("permutation: no data");
}

void write_permutation_text(std::ostream& out, const Permutation& sigma) {
    out << sigma.one_line() << '\n';
}

QapInstance read_qap_text(std::istream& in) {
    const Eigen::Index n = read_dimension(in, "qap instance");
    RowMatrixXd a = read_rows(in, n, "qap instance (A)");
    RowMatrixXd b = read_rows(in, n, "qap instance (B)");
    return QapInstance(SquareMatrix(std::move(a)), SquareMatrix(std::move(b)));
}

void write_qap_text(std::ostream& out, const QapInstance& inst) {
    out << inst.n() << '\n' << std::setprecision(17);
    for (const SquareMatrix* m : {&inst.a(), &inst.b()}) {
        for (Eigen::Index i = 0; i < inst.n(); ++i) {
            for (Eigen::Index j = 0; j < inst.n(); ++j) {
                if (j > 0) out << ' ';
                out << (*m)(i, j);
            }
            out << '\n';
        }
    }
}

QapInstance qap_from_json(const nlohmann::json& j) {
    if (!j.is_object() || !j.contains("n") || !j.contains("A") || !j.contains("B") ||
        !j["n"].is_number_integer() || j["n"].get<long long>() < 1) {
        throw ParseError("qap JSON: expected {\"n\": ..., \"A\": [[...]], \"B\": [[...]]}");
    }
    const auto n = static_cast<Eigen::Index>(j["n"].get<long long>());
    return QapInstance(SquareMatrix(rows_from_json(j["A"], n, "qap JSON (A)")),
                       SquareMatrix(rows_from_json(j["B"], n, "qap JSON (B)")));
}

nlohmann::json qap_to_json(const QapInstance& inst) {
    return nlohmann::json{{"n", inst.n()},
                          {"A", rows_to_json(inst.a().mat())},
                          {"B", rows_to_json(inst.b().mat())}};
}

QapInstance load_qap_file(const std::filesystem::path& path) {
    if (path.extension() == ".json") return qap_from_json(parse_json_file(path));
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open " + path.string());
    return read_qap_text(in);
}

nlohmann::json nconv_to_json(const NconvApprox& approx) {
    nlohmann::json traces = nlohmann::json::object();
    for (const auto& [sigma, t] : approx.per_perm_trace) traces[sigma.one_line()] = t;
    nlohmann::json counts = nlohmann::json::object();
    for (const auto& [sigma, c] : approx.perm_counts.counts()) counts[sigma.one_line()] = c;
    return nlohmann::json{
        {"n", approx.n},
        {"sample_count", approx.sample_count},
        {"form", approx.form == NconvForm::kWeightsTimesPerms ? "weights_times_perms"
                                                              : "perms_times_weights"},
        {"a_hat", rows_to_json(approx.a_hat.mat())},
        {"weight_sum", rows_to_json(approx.weight_sum.mat())},
        {"per_perm_trace", std::move(traces)},
        {"perm_counts", nlohmann::json{{"total", approx.perm_counts.total()},
                                       {"counts", std::move(counts)}}},
    };
}

}  // namespace permround
