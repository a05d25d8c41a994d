# c1 may only justify factivity instances
c1: JT
