"""Build a tiny ledger net by hand and poke at its incidence structure.

Six addresses, seven transactions; four of the transactions are coinbase
(no inputs).  The net stores one place per address, one transition per
transaction, and binary pre/post incidence matrices.
"""

from chainpetri import PlaceTransitionNet

LEDGER = [
    ("t1", [], ["a1"]),                    # coinbase pays a1
    ("t2", [], ["a1"]),                    # ... and again
    ("t3", ["a1"], ["a2", "a3", "a4"]),    # a1 fans out to three addresses
    ("t4", [], ["a2"]),                    # coinbase pays a2
    ("t5", ["a2", "a3"], ["a5", "a6"]),    # a2 and a3 co-spend
    ("t6", [], ["a2"]),                    # coinbase pays a2 again
    ("t7", ["a2", "a6"], ["a5"]),          # a2 and a6 co-spend
]

net = PlaceTransitionNet()
for tx_id, inputs, outputs in LEDGER:
    net.record_transaction(tx_id, inputs, outputs)
net.seal()

print(net)
print()

print("pre-incidence (rows = addresses a1..a6, cols = transactions t1..t7):")
print(net.pre.toarray())
print()
print("post-incidence:")
print(net.post.toarray())
print()

a2 = net.place_of("a2")
print(f"a2 spends in {net.row_nnz('pre', a2)} transactions "
      f"and receives in {net.row_nnz('post', a2)}")
print(f"a2 unspent outputs (receives minus spends): {net.utxo_count(a2)}")

t5 = net.transition_of("t5")
inputs = sorted(net.address_of(p) for p in net.column_places("pre", t5))
print(f"t5 is fed by {inputs} -- those addresses must share one owner")

coinbases = [
    net.tx_id_of(t)
    for t in range(net.num_transitions)
    if not net.column_places("pre", t)
]
print(f"coinbase transactions (empty input column): {coinbases}")
