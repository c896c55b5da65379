#include "mixtest/csv.hpp"

#include <cstdio>
#include <fstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <gtest/gtest.h>

#include "mixtest/empirical.hpp"

using namespace mixtest;

namespace {

class TempFile {
  public:
    explicit TempFile(const std::string& name)
        : path_(std::string(::testing::TempDir()) + name) {}
    ~TempFile() { std::remove(path_.c_str()); }

    const std::string& path() const { return path_; }

    void fill(const std::string& content) const {
        std::ofstream out(path_, std::ios::binary);
        out << content;
    }

  private:
    std::string path_;
};

std::string error_message(const std::string& path) {
    try {
        read_csv_dataset(path);
    } catch (const DataError& e) {
        return e.what();
    }
    return "<no error>";
}

}  // namespace

TEST(ReadCsv, PlainNumericRows) {
    const TempFile f("plain.csv");
    f.fill("1.5,2\n-0.25,3e2\n");
    const Dataset d = read_csv_dataset(f.path());
    EXPECT_EQ(d.dim, 2);
    ASSERT_EQ(d.size(), 2u);
    EXPECT_EQ(d.values, (std::vector<double>{1.5, 2.0, -0.25, 300.0}));
}

TEST(ReadCsv, HeaderAutodetected) {
    const TempFile f("header.csv");
    f.fill("x,y\n1,2\n3,4\n");
    const Dataset d = read_csv_dataset(f.path());
    EXPECT_EQ(d.dim, 2);
    EXPECT_EQ(d.size(), 2u);
    EXPECT_EQ(d.values.front(), 1.0);
}

TEST(ReadCsv, CrlfAndPaddingTolerated) {
    const TempFile f("crlf.csv");
    f.fill("a\r\n 1 ,\t2\r\n3,4\r\n\r\n\n");
    const Dataset d = read_csv_dataset(f.path());
    EXPECT_EQ(d.dim, 2);
    EXPECT_EQ(d.size(), 2u);
    EXPECT_EQ(d.values, (std::vector<double>{1.0, 2.0, 3.0, 4.0}));
}

TEST(ReadCsv, SingleColumn) {
    const TempFile f("one.csv");
    f.fill("0.5\n0.25\n0.125\n");
    const Dataset d = read_csv_dataset(f.path());
    EXPECT_EQ(d.dim, 1);
    EXPECT_EQ(d.size(), 3u);
}

TEST(ReadCsv, MissingFile) {
    EXPECT_THROW(read_csv_dataset("/nonexistent/really_not_here.csv"), DataError);
    EXPECT_NE(error_message("/nonexistent/really_not_here.csv").find("cannot open"),
              std::string::npos);
}

TEST(ReadCsv, RaggedRowsRejectedWithLocation) {
    const TempFile f("ragged.csv");
    f.fill("1,2\n3,4,5\n");
    const std::string msg = error_message(f.path());
    EXPECT_NE(msg.find(":2: "), std::string::npos);
    EXPECT_NE(msg.find("expected 2 fields, got 3"), std::string::npos);
}

TEST(ReadCsv, NonNumericBeyondHeaderRejected) {
    const TempFile f("bad.csv");
    f.fill("1,2\n3,oops\n");
    const std::string msg = error_message(f.path());
    EXPECT_NE(msg.find(":2: "), std::string::npos);
    EXPECT_NE(msg.find("field 2 is not a number: 'oops'"), std::string::npos);
    // A second non-numeric line after a header is an error, not a comment.
    const TempFile g("two_headers.csv");
    g.fill("x\ny\n1\n");
    EXPECT_NE(error_message(g.path()).find(":2: "), std::string::npos);
}

TEST(ReadCsv, NonFiniteRejected) {
    const TempFile f("naninf.csv");
    f.fill("1\nnan\n");
    EXPECT_NE(error_message(f.path()).find("field 1 is not finite"), std::string::npos);
    const TempFile g("inf.csv");
    g.fill("inf\n");
    EXPECT_NE(error_message(g.path()).find("is not finite"), std::string::npos);
}

TEST(ReadCsv, EmptyInputsRejected) {
    const TempFile f("empty.csv");
    f.fill("");
    EXPECT_NE(error_message(f.path()).find("no records"), std::string::npos);
    const TempFile g("only_header.csv");
    g.fill("x,y\n");
    EXPECT_NE(error_message(g.path()).find("no records"), std::string::npos);
    const TempFile h("leading_blank.csv");
    h.fill("\n1,2\n");
    EXPECT_NE(error_message(h.path()).find("blank line before any record"), std::string::npos);
}

TEST(WriteCsv, RoundTripIsBitwiseExact) {
    const TempFile f("roundtrip.csv");
    const std::vector<double> values = {3.141592653589793, -2.2250738585072014e-308,
                                        1.7976931348623157e308, 0.1,
                                        -0.30000000000000004, 1234567890.123456789};
    const Dataset d(2, values);
    write_csv_dataset(f.path(), d);
    const Dataset back = read_csv_dataset(f.path());
    EXPECT_EQ(back.dim, 2);
    ASSERT_EQ(back.values.size(), values.size());
    for (std::size_t i = 0; i < values.size(); ++i) {
        EXPECT_EQ(back.values[i], values[i]) << "i=" << i;  // bitwise round trip
    }
}

TEST(WriteCsv, HeaderWrittenAndValidated) {
    const TempFile f("with_header.csv");
    const Dataset d(2, {1.0, 2.0});
    write_csv_dataset(f.path(), d, {"u", "v"});
    std::ifstream in(f.path());
    std::string first;
    std::getline(in, first);
    EXPECT_EQ(first, "u,v");
    const Dataset back = read_csv_dataset(f.path());
    EXPECT_EQ(back.size(), 1u);

    EXPECT_THROW(write_csv_dataset(f.path(), d, {"only_one"}), std::invalid_argument);
    EXPECT_THROW(write_csv_dataset("/nonexistent/dir/out.csv", d), DataError);
}
