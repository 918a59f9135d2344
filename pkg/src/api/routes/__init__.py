"""
API 路由模块
system: 健康检查与算法列表；solve: 求解、方案检查、前沿指标
"""
