"""
GAP Solver 源代码包
多目标垃圾收集点选址：解码器、PageRank 启发式、NSGA-II / SPEA2 与前沿评价
"""
