from bbnet.model import Network
from bbnet.validation import validate


def test_dangling_container_reference():
    net = Network()
    f = net.add_fact("x", True)
    c = net.add_container("gone")
    net.assign_fact(f, c)
    del net.containers[c]
    found = validate(net)
    assert [v.kind for v in found] == ["dangling_reference"]


def test_three_container_rule_is_one_lint():
    net = Network()
    cs = [net.add_container(f"c{i}") for i in range(3)]
    fs = []
    for c in cs:
        f = net.add_fact(f"in {c}", True)
        net.assign_fact(f, c)
        fs.append(f)
    net.add_link("l", cs[0], cs[1])
    net.add_link("l", cs[1], cs[2])
    net.add_rule([(fs[0], True), (fs[1], True)], [(fs[2], True)])
    found = validate(net)
    assert len(found) == 1 and found[0].kind == "cross_container_rule"
    assert validate(net, lint=False) == []


def test_broken_membership_and_self_link_detected():
    net = Network()
    f = net.add_fact("x", True)
    a, b = net.add_container("a"), net.add_container("b")
    net.assign_fact(f, a)
    net.containers[b].members.add(f)  # second home behind the API's back
    kinds = {v.kind for v in validate(net)}
    assert "membership" in kinds

    net2 = Network()
    c = net2.add_container("c")
    from bbnet.model import Link

    net2.links[0] = Link(0, "loop", c, c)
    assert [v.kind for v in validate(net2)] == ["self_link"]


def test_duplicate_description_in_one_container_is_linted():
    net = Network()
    c = net.add_container("Router 1")
    for _ in range(2):
        net.assign_fact(net.add_fact("Manufacturer", True), c)
    other = net.add_container("Router 2")
    net.assign_fact(net.add_fact("Manufacturer", True), other)
    found = validate(net)
    assert [v.kind for v in found] == ["duplicate_description"]
    assert validate(net, lint=False) == []


def test_fixtures_validate_clean(employee, equipment):
    assert validate(employee) == []
    assert validate(equipment) == []
