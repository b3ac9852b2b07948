"""
Small hand-made table: 6 records, 3 variables, full rank.
"""
columns = ('height', 'weight', 'age')

data = \
[[170.0, 65.5, 34.0],
 [182.5, 80.0, 41.0],
 [158.0, 52.0, 29.0],
 [175.0, 71.0, 56.0],
 [166.5, 60.5, 23.0],
 [190.0, 95.0, 47.0]]
