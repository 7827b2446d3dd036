#include "hzreach/json_io.hpp"

#include <fstream>
#include <stdexcept>

namespace hzreach {

Json matrix_to_json(const Mat& M)
{
    if (M.rows() == 0 || M.cols() == 0) return Json::array();
    Json rows = Json::array();
    for (Index i = 0; i < M.rows(); ++i)
    {
        Json row = Json::array();
        for (Index j = 0; j < M.cols(); ++j) row.push_back(M(i, j));
        rows.push_back(std::move(row));
    }
    return rows;
}

Mat matrix_from_json(const Json& j, Index rows, Index cols)
{
    Mat M = Mat::Zero(rows, cols);
    if (j.empty()) return M;
    if (static_cast<Index>(j.size()) != rows)
        throw std::invalid_argument("matrix_from_json: row count mismatch");
    for (Index i = 0; i < rows; ++i)
    {
        const auto& row = j.at(i);
        if (static_cast<Index>(row.size()) != cols)
            throw std::invalid_argument("matrix_from_json: column count mismatch");
        for (Index k = 0; k < cols; ++k) M(i, k) = row.at(k).get<double>();
    }
    return M;
}

Json vector_to_json(const Vec& v)
{
    Json out = Json::array();
    for (Index i = 0; i < v.size(); ++i) out.push_back(v[i]);
    return out;
}

Vec vector_from_json(const Json& j)
{
    Vec v(j.size());
    for (Index i = 0; i < static_cast<Index>(j.size()); ++i)
        v[i] = j.at(i).get<double>();
    return v;
}

Json hz_to_json(const HybridZonotope& Z)
{
    Json j;
    j["n"] = Z.dim();
    j["ng"] = Z.num_cont_gens();
    j["nb"] = Z.num_bin_gens();
    j["nc"] = Z.num_constraints();
    j["Gc"] = matrix_to_json(Z.Gc());
    j["Gb"] = matrix_to_json(Z.Gb());
    j["c"] = vector_to_json(Z.c());
    j["Ac"] = matrix_to_json(Z.Ac());
    j["Ab"] = matrix_to_json(Z.Ab());
    j["b"] = vector_to_json(Z.b());
    return j;
}

HybridZonotope hz_from_json(const Json& j)
{
    const Index n = j.at("n").get<Index>();
    const Index ng = j.at("ng").get<Index>();
    const Index nb = j.at("nb").get<Index>();
    const Index nc = j.at("nc").get<Index>();
    return HybridZonotope(matrix_from_json(j.at("Gc"), n, ng),
                          matrix_from_json(j.at("Gb"), n, nb),
                          vector_from_json(j.at("c")),
                          matrix_from_json(j.at("Ac"), nc, ng),
                          matrix_from_json(j.at("Ab"), nc, nb),
                          vector_from_json(j.at("b")));
}

Json box_to_json(const Box& B)
{
    Json j;
    j["lb"] = vector_to_json(B.lb);
    j["ub"] = vector_to_json(B.ub);
    return j;
}

Box box_from_json(const Json& j)
{
    return Box(vector_from_json(j.at("lb")), vector_from_json(j.at("ub")));
}

Json load_json_file(const std::string& path)
{
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open file: " + path);
    Json j;
    in >> j;
    return j;
}

void write_json_file(const std::string& path, const Json& j)
{
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write file: " + path);
    out << j.dump(2) << "\n";
}

}  // namespace hzreach
