import random
from datetime import date

import pytest

from ordep import ParseError, Relation, Schema, SchemaError, encode_ranks, infer_schema, load_csv
from ordep.relation import parse_value


def test_schema_rejects_bad_type():
    with pytest.raises(SchemaError):
        Schema((("a", "integer"), ("b", "decimal")))


def test_schema_rejects_duplicate_name():
    with pytest.raises(SchemaError):
        Schema((("a", "integer"), ("a", "float")))


def test_schema_rejects_empty_name():
    with pytest.raises(SchemaError):
        Schema((("", "integer"),))


def test_schema_rejects_bad_policy():
    with pytest.raises(SchemaError):
        Schema((("a", "integer"),), "nulls_middle")


def test_schema_json_round_trip():
    schema = Schema((("a", "integer"), ("b", "date")), "nulls_last")
    again = Schema.from_json(schema.to_json())
    assert again == schema


def test_schema_from_json_bare_array():
    schema = Schema.from_json('[{"name": "x", "type": "text"}]')
    assert schema.attributes == (("x", "text"),)
    assert schema.null_policy == "nulls_first"


def test_schema_from_json_errors():
    with pytest.raises(SchemaError):
        Schema.from_json("not json")
    with pytest.raises(SchemaError):
        Schema.from_json('{"null_policy": "nulls_first"}')
    with pytest.raises(SchemaError):
        Schema.from_json('[{"name": "x"}]')
    with pytest.raises(SchemaError):
        Schema.from_json('"just a string"')


def test_schema_index_and_type_of():
    schema = Schema((("a", "integer"), ("b", "float")))
    assert schema.index("b") == 1
    assert schema.type_of(0) == "integer"
    with pytest.raises(SchemaError):
        schema.index("c")


def test_parse_value_by_type():
    assert parse_value("42", "integer") == 42
    assert parse_value("-3", "integer") == -3
    assert parse_value("2.5", "float") == 2.5
    assert parse_value("2021-06-30", "date") == date(2021, 6, 30)
    assert parse_value("hello", "text") == "hello"


def test_parse_value_empty_is_null_for_every_type():
    for typ in ("integer", "float", "text", "date"):
        assert parse_value("", typ) is None


def test_parse_value_rejects_garbage():
    with pytest.raises(ParseError):
        parse_value("4.5", "integer")
    with pytest.raises(ParseError):
        parse_value("abc", "float")
    with pytest.raises(ParseError):
        parse_value("junk", "date")


def test_parse_value_rejects_nan():
    with pytest.raises(ParseError):
        parse_value("nan", "float")


def test_encode_ranks_dense_ascending():
    assert encode_ranks([30, 10, 20, 10], "integer") == [3, 1, 2, 1]


def test_encode_ranks_taxes_salary():
    sal = [5000.0, 8000.0, 10000.0, 4500.0, 6000.0, 8000.0]
    assert encode_ranks(sal, "float") == [2, 4, 5, 1, 3, 4]


def test_encode_ranks_taxes_position():
    posit = ["secr", "mngr", "direct", "secr", "mngr", "direct"]
    assert encode_ranks(posit, "text") == [3, 2, 1, 3, 2, 1]


def test_encode_ranks_null_policies():
    vals = [7, None, 3]
    assert encode_ranks(vals, "integer", "nulls_first") == [2, 0, 1]
    assert encode_ranks(vals, "integer", "nulls_last") == [2, 3, 1]
    with pytest.raises(ParseError):
        encode_ranks(vals, "integer", "reject")


def test_encode_ranks_all_null():
    assert encode_ranks([None, None], "integer", "nulls_first") == [0, 0]
    assert encode_ranks([None, None], "text", "nulls_last") == [1, 1]


def test_encode_ranks_int_coerced_in_float_column():
    assert encode_ranks([1, 1.5, 2], "float") == [1, 2, 3]
    assert encode_ranks([2, 2.0], "float") == [1, 1]


def test_encode_ranks_type_mismatch():
    with pytest.raises(ParseError):
        encode_ranks([1, "two"], "integer")
    with pytest.raises(ParseError):
        encode_ranks([True], "integer")
    with pytest.raises(ParseError):
        encode_ranks([1.5], "integer")
    with pytest.raises(ParseError):
        encode_ranks([float("nan")], "float")


def test_encode_ranks_dates():
    d = [date(2021, 3, 1), date(2020, 1, 1), date(2021, 3, 1)]
    assert encode_ranks(d, "date") == [2, 1, 2]


def test_encode_ranks_preserves_order_and_ties():
    rng = random.Random(7)
    for _ in range(50):
        vals = [rng.randrange(6) for _ in range(rng.randint(1, 12))]
        ranks = encode_ranks(vals, "integer")
        for i in range(len(vals)):
            for j in range(len(vals)):
                assert (vals[i] < vals[j]) == (ranks[i] < ranks[j])
                assert (vals[i] == vals[j]) == (ranks[i] == ranks[j])


def test_from_columns_and_from_rows_agree():
    schema = Schema((("a", "integer"), ("b", "text")))
    cols = [[1, 2, 1], ["x", "y", "x"]]
    rows = [[1, "x"], [2, "y"], [1, "x"]]
    assert Relation.from_columns(schema, cols) == Relation.from_rows(schema, rows)


def test_from_columns_shape_errors():
    schema = Schema((("a", "integer"), ("b", "integer")))
    with pytest.raises(SchemaError):
        Relation.from_columns(schema, [[1, 2]])
    with pytest.raises(SchemaError):
        Relation.from_columns(schema, [[1, 2], [3]])
    with pytest.raises(ParseError):
        Relation.from_rows(schema, [[1, 2], [3]])


def test_relation_lookups():
    schema = Schema((("a", "integer"), ("b", "integer")))
    rel = Relation.from_columns(schema, [[5, 6], [8, 7]])
    assert rel.attr_count == 2
    assert rel.row_count == 2
    assert rel.attr_index("b") == 1
    assert rel.attr_index(0) == 0
    assert rel.attr_name(1) == "b"
    assert rel.column("b") == (2, 1)
    assert rel.raw_column("b") == (8, 7)
    with pytest.raises(SchemaError):
        rel.attr_index(2)
    with pytest.raises(SchemaError):
        rel.attr_index("zzz")


def test_load_csv_taxes(taxes):
    assert taxes.row_count == 6
    assert taxes.attr_count == 9
    assert taxes.column("salary") == (2, 4, 5, 1, 3, 4)
    assert taxes.column("position") == (3, 2, 1, 3, 2, 1)
    assert taxes.raw_column("year") == (16, 16, 16, 15, 15, 15)


def test_load_csv_header_order_independent(tmp_path, taxes_schema, taxes):
    path = tmp_path / "shuffled.csv"
    path.write_text(
        "year,ID,position,bin,salary,percentage,tax,group,subgroup\n"
        "16,10,secr,1,5000,20,1000,A,III\n"
        "16,11,mngr,2,8000,25,2000,C,II\n"
        "16,12,direct,3,10000,30,3000,D,I\n"
        "15,10,secr,1,4500,20,900,A,III\n"
        "15,11,mngr,2,6000,25,1500,C,I\n"
        "15,12,direct,3,8000,25,2000,C,II\n"
    )
    assert load_csv(path, taxes_schema) == taxes


def test_load_csv_no_header(tmp_path):
    schema = Schema((("a", "integer"), ("b", "text")))
    path = tmp_path / "bare.csv"
    path.write_text("1,x\n2,y\n")
    rel = load_csv(path, schema, has_header=False)
    assert rel.raw_column("a") == (1, 2)
    assert rel.raw_column("b") == ("x", "y")


def test_load_csv_empty_fields_are_nulls(tmp_path):
    schema = Schema((("a", "integer"), ("b", "text")))
    path = tmp_path / "gaps.csv"
    path.write_text("a,b\n1,\n,x\n")
    rel = load_csv(path, schema)
    assert rel.raw_column("a") == (1, None)
    assert rel.raw_column("b") == (None, "x")
    assert rel.column("a") == (1, 0)


def test_load_csv_header_mismatch(tmp_path):
    schema = Schema((("a", "integer"),))
    path = tmp_path / "bad.csv"
    path.write_text("z\n1\n")
    with pytest.raises(ParseError):
        load_csv(path, schema)


def test_load_csv_duplicate_header(tmp_path):
    schema = Schema((("a", "integer"), ("b", "integer")))
    path = tmp_path / "dup.csv"
    path.write_text("a,a\n1,2\n")
    with pytest.raises(ParseError, match="duplicate"):
        load_csv(path, schema)


def test_load_csv_ragged_row(tmp_path):
    schema = Schema((("a", "integer"), ("b", "integer")))
    path = tmp_path / "ragged.csv"
    path.write_text("a,b\n1,2\n3\n")
    with pytest.raises(ParseError, match="row 3"):
        load_csv(path, schema)


def test_load_csv_bad_cell_names_row_and_column(tmp_path):
    schema = Schema((("a", "integer"), ("b", "integer")))
    path = tmp_path / "cell.csv"
    path.write_text("a,b\n1,2\n3,oops\n")
    with pytest.raises(ParseError) as err:
        load_csv(path, schema)
    assert err.value.row == 3
    assert err.value.column == "b"
    assert "row 3" in str(err.value)
    assert "'b'" in str(err.value)


def test_load_csv_empty_file(tmp_path):
    schema = Schema((("a", "integer"),))
    path = tmp_path / "void.csv"
    path.write_text("")
    with pytest.raises(ParseError):
        load_csv(path, schema)


def test_load_csv_header_only(tmp_path):
    schema = Schema((("a", "integer"),))
    path = tmp_path / "empty.csv"
    path.write_text("a\n")
    rel = load_csv(path, schema)
    assert rel.row_count == 0


def test_infer_schema_mixed(tmp_path):
    path = tmp_path / "mix.csv"
    path.write_text(
        "n,x,d,s\n"
        "1,1.5,2021-01-02,aa\n"
        ",2,2021-02-03,1x\n"
        "3,,,\n"
    )
    schema = infer_schema(path)
    assert schema.attributes == (
        ("n", "integer"),
        ("x", "float"),
        ("d", "date"),
        ("s", "text"),
    )


def test_infer_schema_no_header(tmp_path):
    path = tmp_path / "noh.csv"
    path.write_text("1,a\n2,b\n")
    schema = infer_schema(path, has_header=False)
    assert schema.names == ("c1", "c2")
    assert schema.attributes[0][1] == "integer"


def test_infer_schema_empty_file(tmp_path):
    path = tmp_path / "void.csv"
    path.write_text("")
    with pytest.raises(ParseError):
        infer_schema(path)
